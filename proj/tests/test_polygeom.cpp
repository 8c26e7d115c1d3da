#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "edmrank/edm.hpp"
#include "edmrank/errors.hpp"
#include "edmrank/polygeom.hpp"
#include "edmrank/polygon.hpp"

namespace edmrank {
namespace {

Vec2 v2(long x, long y) { return Vec2{Rational(x), Rational(y)}; }

std::vector<Rational> rats(std::vector<long> v) {
  std::vector<Rational> r;
  for (long x : v) r.emplace_back(x);
  return r;
}

EdmInstance instance(std::vector<long> alpha) {
  return EdmInstance::from_alpha(AlphaVector(rats(std::move(alpha))));
}

TEST(Polygon, ConvexHullBasics) {
  const Polygon2 p = Polygon2::convex_hull(
      {v2(0, 0), v2(2, 0), v2(2, 2), v2(0, 2), v2(1, 1), v2(1, 0), v2(0, 0)});
  EXPECT_TRUE(p.is_convex());
  EXPECT_EQ(p.size(), 4u);
  EXPECT_GT(p.doubled_area(), Rational(0));
  const Polygon2 seg = Polygon2::convex_hull({v2(0, 0), v2(1, 1), v2(3, 3)});
  EXPECT_EQ(seg.kind(), Polygon2::Kind::Segment);
  EXPECT_EQ(seg.vertex(0), v2(0, 0));
  EXPECT_EQ(seg.vertex(1), v2(3, 3));
  EXPECT_EQ(Polygon2::convex_hull({v2(5, 5), v2(5, 5)}).kind(), Polygon2::Kind::Point);
}

TEST(Polygon, FromCcwConvexValidates) {
  EXPECT_NO_THROW(Polygon2::from_ccw_convex({v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)}));
  EXPECT_THROW(Polygon2::from_ccw_convex({v2(0, 0), v2(0, 1), v2(1, 1), v2(1, 0)}),
               std::invalid_argument);
  EXPECT_THROW(Polygon2::from_ccw_convex({v2(0, 0), v2(1, 0), v2(2, 0)}),
               std::invalid_argument);
  EXPECT_THROW(Polygon2::from_ccw_convex({v2(0, 0), v2(1, 1), v2(1, 0), v2(0, 1)}),
               std::invalid_argument);
}

TEST(Polygon, ContainmentAndBoundary) {
  const Polygon2 tri = Polygon2::from_ccw_convex({v2(0, 0), v2(4, 0), v2(0, 4)});
  EXPECT_TRUE(polygon_contains(tri, v2(1, 1)));
  EXPECT_TRUE(polygon_contains(tri, v2(2, 2)));
  EXPECT_TRUE(on_boundary(tri, v2(2, 2)));
  EXPECT_FALSE(on_boundary(tri, v2(1, 1)));
  EXPECT_FALSE(polygon_contains(tri, v2(3, 3)));
  EXPECT_TRUE(on_segment(v2(0, 0), v2(4, 0), v2(3, 0)));
  EXPECT_FALSE(on_segment(v2(0, 0), v2(4, 0), v2(5, 0)));
}

TEST(Polygon, ConvexCoefficientsReproducePoint) {
  const Polygon2 pent = Polygon2::from_ccw_convex(
      {v2(0, 0), v2(4, 0), v2(5, 3), v2(2, 5), v2(-1, 3)});
  const Vec2 q{Rational(3, 2), Rational(7, 4)};
  const auto coeffs = convex_coefficients(pent, q);
  ASSERT_TRUE(coeffs);
  Rational sum(0);
  Vec2 acc{Rational(0), Rational(0)};
  for (std::size_t i = 0; i < pent.size(); ++i) {
    EXPECT_GE((*coeffs)[i], Rational(0));
    sum += (*coeffs)[i];
    acc = acc + (*coeffs)[i] * pent.vertex(i);
  }
  EXPECT_EQ(sum, Rational(1));
  EXPECT_EQ(acc, q);
  EXPECT_FALSE(convex_coefficients(pent, v2(10, 10)));
  const Polygon2 seg = Polygon2::segment(v2(0, 0), v2(4, 2));
  const auto sc = convex_coefficients(seg, v2(1, 2));
  EXPECT_FALSE(sc);
  const auto sc2 = convex_coefficients(seg, v2(2, 1));
  ASSERT_TRUE(sc2);
  EXPECT_EQ((*sc2)[0], Rational(1, 2));
  EXPECT_EQ((*sc2)[1], Rational(1, 2));
}

TEST(OuterVertices, KnownTriangle) {
  const OuterVertices ov = outer_vertices(AlphaVector(rats({0, 1, 2})));
  QMatrix expected(3, 3);
  expected(2, 0) = Rational(1);
  expected(0, 1) = Rational(1);
  expected(1, 2) = Rational(1);
  EXPECT_EQ(ov.V, expected);
  EXPECT_EQ(ov.s[2], Rational(-1));
  EXPECT_EQ(ov.u[2], (std::vector<Rational>{Rational(0), Rational(-1), Rational(0)}));
}

TEST(OuterVertices, KnownQuadWithWrapSign) {
  const OuterVertices ov = outer_vertices(AlphaVector(rats({0, 1, 2, 3})));
  EXPECT_EQ(ov.u[3],
            (std::vector<Rational>{Rational(0), Rational(-2), Rational(-2), Rational(0)}));
  EXPECT_EQ(ov.s[3], Rational(-4));
  const std::vector<std::vector<Rational>> cols = {
      {Rational(0), Rational(0), Rational(1, 4), Rational(3, 4)},
      {Rational(1, 2), Rational(0), Rational(0), Rational(1, 2)},
      {Rational(3, 4), Rational(1, 4), Rational(0), Rational(0)},
      {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)},
  };
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(ov.V.column(k), cols[k]);
}

TEST(OuterVertices, StructureOnRandomInstances) {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const AlphaVector a = random_alpha(6 + seed % 5, 100 + seed);
    const OuterVertices ov = outer_vertices(a);
    const std::size_t n = a.n();
    for (std::size_t k = 0; k < n; ++k) {
      Rational sum(0);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GE(ov.V(i, k), Rational(0));
        sum += ov.V(i, k);
      }
      EXPECT_EQ(sum, Rational(1));
      EXPECT_TRUE(ov.V(k, k).is_zero());
      EXPECT_TRUE(ov.V((k + 1) % n, k).is_zero());
    }
  }
}

TEST(AffineChart, RoundTripOnVerticesAndColumns) {
  const EdmInstance inst = instance({0, 1, 2, 3, 4});
  const AffineChart chart = AffineChart::for_instance(inst);
  const OuterVertices ov = outer_vertices(inst.alpha);
  for (std::size_t k = 0; k < inst.stoch.n; ++k) {
    const auto q = chart.forward(ov.V.column(k));
    ASSERT_TRUE(q);
    EXPECT_EQ(chart.backward(*q), ov.V.column(k));
  }
  for (std::size_t j = 0; j < inst.stoch.n; ++j)
    EXPECT_TRUE(chart.forward(inst.stoch.Dprime.column(j)));
  EXPECT_FALSE(chart.forward(std::vector<Rational>(inst.stoch.n, Rational(0))));
}

TEST(AffineChart, BackwardImagesSatisfyPlaneConditions) {
  const EdmInstance inst = instance({1, 3, 4, 7});
  const AffineChart chart = AffineChart::for_instance(inst);
  const std::vector<Vec2> probes = {v2(0, 0), v2(1, 0), v2(-2, 3),
                                    Vec2{Rational(1, 3), Rational(-5, 7)}};
  for (const Vec2& q : probes) {
    const std::vector<Rational> x = chart.backward(q);
    Rational sum(0);
    for (const Rational& c : x) sum += c;
    EXPECT_EQ(sum, Rational(1));
    QMatrix col(x.size(), 1);
    for (std::size_t i = 0; i < x.size(); ++i) col(i, 0) = x[i];
    EXPECT_TRUE(columns_in_span(inst.stoch.Dprime, col));
    const auto back = chart.forward(x);
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, q);
  }
}

TEST(OuterPolygonChart, ConvexCounterclockwiseIndexOrder) {
  for (std::uint64_t seed : {7u, 8u, 9u, 10u}) {
    const EdmInstance inst =
        EdmInstance::from_alpha(random_alpha(4 + seed % 6, 200 + seed));
    const AffineChart chart = AffineChart::for_instance(inst);
    const OuterPolygon op = outer_polygon(inst, chart);
    EXPECT_TRUE(op.polygon.is_convex());
    EXPECT_EQ(op.polygon.size(), inst.stoch.n);
    EXPECT_EQ(op.polygon.vertices(), op.chart_vertices);
    EXPECT_GT(op.polygon.doubled_area(), Rational(0));
  }
}

TEST(InnerPoints, KnownTriangleSitsOnEdges) {
  const EdmInstance inst = instance({0, 1, 2});
  const AffineChart chart = AffineChart::for_instance(inst);
  const OuterPolygon op = outer_polygon(inst, chart);
  const InnerPoints ip = inner_points(inst, chart);
  // Column 0 of D' is 4/5 v_0 + 1/5 v_2 and must sit on that outer edge.
  EXPECT_TRUE(on_segment(op.chart_vertices[2], op.chart_vertices[0], ip.points[0]));
  for (const Vec2& p : ip.points) EXPECT_TRUE(polygon_contains(op.polygon, p));
  for (const Extremality e : ip.status) EXPECT_EQ(e, Extremality::Vertex);
}

TEST(InnerPoints, HullInsideOuterOnRandomInstances) {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const EdmInstance inst =
        EdmInstance::from_alpha(random_alpha(5 + seed % 4, 300 + seed));
    const AffineChart chart = AffineChart::for_instance(inst);
    const OuterPolygon op = outer_polygon(inst, chart);
    const InnerPoints ip = inner_points(inst, chart);
    for (const Vec2& p : ip.points) EXPECT_TRUE(polygon_contains(op.polygon, p));
    for (const Vec2& h : ip.hull.vertices()) EXPECT_TRUE(polygon_contains(op.polygon, h));
    for (const Extremality e : ip.status) EXPECT_EQ(e, Extremality::Vertex);
  }
}

TEST(SlackSimplexSlice, PermutationForTriangle) {
  const OuterVertices ov = outer_vertices(AlphaVector(rats({0, 1, 2})));
  const QMatrix s = slack_matrix_simplex_slice(ov);
  EXPECT_EQ(matrix_rank(s), 3);
  for (std::size_t k = 0; k < 3; ++k) {
    Rational sum(0);
    int zeros = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      sum += s(i, k);
      zeros += s(i, k).is_zero();
    }
    EXPECT_EQ(sum, Rational(1));
    EXPECT_EQ(zeros, 2);
  }
}

TEST(SlackPolygon, UnitRightTriangle) {
  const Polygon2 tri = Polygon2::from_ccw_convex({v2(0, 0), v2(1, 0), v2(0, 1)});
  const QMatrix s = slack_matrix_polygon(tri);
  // Row 1 is the edge from vertex 0 to vertex 1; the opposite vertex has
  // slack equal to the doubled triangle area.
  EXPECT_EQ(s(1, 2), Rational(1));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(s(i, i).is_zero());
    EXPECT_TRUE(s(i, (i + 2) % 3).is_zero());
    for (std::size_t k = 0; k < 3; ++k) EXPECT_GE(s(i, k), Rational(0));
  }
}

TEST(SlackPolygon, ScalingHomogeneity) {
  const std::vector<Vec2> sq = {v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)};
  std::vector<Vec2> doubled;
  for (const Vec2& p : sq) doubled.push_back(Rational(2) * p);
  const QMatrix s1 = slack_matrix_polygon(Polygon2::from_ccw_convex(sq));
  const QMatrix s2 = slack_matrix_polygon(Polygon2::from_ccw_convex(doubled));
  EXPECT_EQ(s2, Rational(4) * s1);
}

TEST(SlackPolygon, RejectsDegenerate) {
  EXPECT_THROW(slack_matrix_polygon(Polygon2::point(v2(1, 1))), std::invalid_argument);
  EXPECT_THROW(slack_matrix_polygon(Polygon2::segment(v2(0, 0), v2(1, 0))),
               std::invalid_argument);
}

TEST(SignNormalize, RecoversFlippedMatrix) {
  QMatrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k)
      m(i, k) = (i == k) ? Rational(0) : Rational(1 + long(i) + 2 * long(k));
  QMatrix flipped = m;
  for (std::size_t k = 0; k < 3; ++k) flipped(1, k) = -flipped(1, k);
  for (std::size_t i = 0; i < 3; ++i) {
    flipped(i, 0) = -flipped(i, 0);
    flipped(i, 2) = -flipped(i, 2);
  }
  const auto fixed = sign_normalize(flipped);
  ASSERT_TRUE(fixed);
  EXPECT_EQ(*fixed, m);
}

TEST(SignNormalize, DetectsImpossiblePattern) {
  QMatrix bad(2, 2);
  bad(0, 0) = bad(0, 1) = bad(1, 0) = Rational(1);
  bad(1, 1) = Rational(-1);
  EXPECT_FALSE(sign_normalize(bad));
}

TEST(WPolygon, KnownPoints) {
  const Polygon2 w = w_polygon(AlphaVector(rats({1, 2, 4})));
  EXPECT_EQ(w.vertex(0), (Vec2{Rational(2), Rational(-1)}));
  EXPECT_EQ(w.vertex(1), (Vec2{Rational(7, 8), Rational(-5, 8)}));
  EXPECT_EQ(w.vertex(2), (Vec2{Rational(3, 2), Rational(-1)}));
}

TEST(WPolygon, HalfSumAndHalfDifference) {
  const AlphaVector a = random_alpha(6, 909).positivized();
  const Polygon2 w = w_polygon(a);
  for (std::size_t k = 0; k < a.n(); ++k) {
    const Rational& ak = a[k];
    const Rational& ak1 = a[(k + 1) % a.n()];
    const Vec2& p = w.vertex(k);
    EXPECT_EQ((p.x + p.y) / Rational(2), Rational(1) / (ak * ak1));
    EXPECT_EQ((p.x - p.y) / Rational(2), ak.inv() + ak1.inv());
  }
}

TEST(WPolygon, RejectsNonpositiveEntries) {
  EXPECT_THROW(w_polygon(AlphaVector(rats({0, 1, 2}))), std::invalid_argument);
  EXPECT_THROW(w_polygon(AlphaVector(rats({-2, 1, 3}))), std::invalid_argument);
}

TEST(SlackIdentity, HoldsSymbolically) {
  EXPECT_TRUE(verify_slack_identity(3));
  EXPECT_TRUE(verify_slack_identity(4));
  EXPECT_TRUE(verify_slack_identity(5));
}

TEST(SlackIdentity, MutatedFactorFails) {
  EXPECT_FALSE(verify_slack_identity(4, 8, Rational(1)));
  EXPECT_FALSE(verify_slack_identity(3, 8, Rational(-2)));
}

TEST(SlackIdentity, LimitsEnforced) {
  EXPECT_THROW(verify_slack_identity(2), std::invalid_argument);
  EXPECT_THROW(verify_slack_identity(9, 8), SymbolicLimitError);
}

TEST(ScalingEquivalence, UniformScaling) {
  const OuterVertices ov = outer_vertices(AlphaVector(rats({0, 1, 2, 3})));
  const QMatrix s = slack_matrix_simplex_slice(ov);
  const auto eq = scaling_equivalence(Rational(2) * s, s);
  ASSERT_TRUE(eq);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t k = 0; k < s.cols(); ++k)
      EXPECT_EQ(Rational(2) * s(i, k), eq->first[i] * s(i, k) * eq->second[k]);
}

TEST(ScalingEquivalence, ZeroPatternMismatchFails) {
  const OuterVertices ov = outer_vertices(AlphaVector(rats({0, 1, 2, 3})));
  const QMatrix s = slack_matrix_simplex_slice(ov);
  QMatrix broken = s;
  broken(2, 0) = Rational(0);
  EXPECT_FALSE(scaling_equivalence(broken, s));
  EXPECT_FALSE(scaling_equivalence(s, QMatrix(3, 3)));
}

TEST(ScalingEquivalence, WSlackMatchesSimplexSlice) {
  for (std::vector<long> alpha :
       {std::vector<long>{1, 2, 4}, {1, 2, 3, 4}, {2, 3, 5, 7, 11}, {1, 4, 9, 16, 25, 36}}) {
    const AlphaVector a(rats(alpha));
    const QMatrix sw = slack_matrix_polygon(w_polygon(a));
    const QMatrix sv = slack_matrix_simplex_slice(outer_vertices(a));
    const auto eq = scaling_equivalence(sw, sv);
    ASSERT_TRUE(eq) << "n = " << alpha.size();
    for (std::size_t i = 0; i < sw.rows(); ++i) EXPECT_GT(eq->first[i], Rational(0));
    for (std::size_t k = 0; k < sw.cols(); ++k) EXPECT_GT(eq->second[k], Rational(0));
    for (std::size_t i = 0; i < sw.rows(); ++i)
      for (std::size_t k = 0; k < sw.cols(); ++k)
        EXPECT_EQ(sw(i, k), eq->first[i] * sv(i, k) * eq->second[k]);
  }
}

TEST(VietaRecover, MidpointExample) {
  const AlphaVector a(rats({1, 2, 4}));
  const Polygon2 w = w_polygon(a);
  const Vec2 h = Rational(1, 2) * (w.vertex(0) + w.vertex(1));
  const VietaResult res = vieta_recover(w, 1, h);
  EXPECT_EQ(res.sigma1, Rational(5, 16));
  EXPECT_EQ(res.sigma2, Rational(9, 8));
  ASSERT_TRUE(res.rational_roots);
  EXPECT_TRUE(res.roots.first == Rational(1, 2) || res.roots.second == Rational(1, 2));
}

TEST(VietaRecover, EndpointsFactorCleanly) {
  const AlphaVector a(rats({1, 2, 4}));
  const Polygon2 w = w_polygon(a);
  const VietaResult left = vieta_recover(w, 1, w.vertex(0));
  ASSERT_TRUE(left.rational_roots);
  EXPECT_EQ(left.roots.first, Rational(1, 2));
  EXPECT_EQ(left.roots.second, Rational(1));
  const VietaResult right = vieta_recover(w, 1, w.vertex(1));
  ASSERT_TRUE(right.rational_roots);
  EXPECT_EQ(right.roots.first, Rational(1, 4));
  EXPECT_EQ(right.roots.second, Rational(1, 2));
}

TEST(VietaRecover, RandomPointsOnEdgeLines) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> lam_num(-12, 12);
  for (int trial = 0; trial < 40; ++trial) {
    const AlphaVector a = random_alpha(4 + trial % 5, 7000 + trial).positivized();
    const Polygon2 w = w_polygon(a);
    const std::size_t k = trial % a.n();
    const Vec2 p = w.vertex((k + a.n() - 1) % a.n());
    const Vec2 q = w.vertex(k);
    const Rational lam(lam_num(rng), 1 + trial % 4);
    const Vec2 h = p + lam * (q - p);
    const VietaResult res = vieta_recover(w, k, h);
    ASSERT_TRUE(res.rational_roots);
    const Rational target = a[k].inv();
    EXPECT_TRUE(res.roots.first == target || res.roots.second == target);
  }
}

TEST(VietaRecover, RejectsOffLinePoints) {
  const AlphaVector a(rats({1, 2, 4}));
  const Polygon2 w = w_polygon(a);
  EXPECT_THROW(vieta_recover(w, 1, v2(100, 100)), std::invalid_argument);
}

TEST(EveryEdgeTouched, ColumnsTouchAllOuterEdges) {
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const EdmInstance inst =
        EdmInstance::from_alpha(random_alpha(4 + seed % 7, 400 + seed));
    const AffineChart chart = AffineChart::for_instance(inst);
    const OuterPolygon op = outer_polygon(inst, chart);
    const InnerPoints ip = inner_points(inst, chart);
    EXPECT_TRUE(every_edge_touched(op.polygon, ip.points));
  }
}

TEST(EveryEdgeTouched, FailsForInteriorPoints) {
  const Polygon2 sq = Polygon2::from_ccw_convex({v2(0, 0), v2(2, 0), v2(2, 2), v2(0, 2)});
  EXPECT_FALSE(every_edge_touched(sq, {v2(1, 1)}));
  EXPECT_FALSE(every_edge_touched(sq, {v2(1, 0), v2(2, 1), v2(1, 2)}));
  EXPECT_TRUE(every_edge_touched(sq, {v2(1, 0), v2(2, 1), v2(1, 2), v2(0, 0)}));
}

}  // namespace
}  // namespace edmrank
