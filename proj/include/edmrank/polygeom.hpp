#pragma once

#include <cstddef>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "edmrank/edm.hpp"
#include "edmrank/errors.hpp"
#include "edmrank/matrix.hpp"
#include "edmrank/polygon.hpp"
#include "edmrank/ratfunc.hpp"

namespace edmrank {

// A generator together with its distance matrix and stochastic form. The
// generator is shifted up front so that all entries are positive: the matrix
// is unchanged by translation, and later formulas divide by the entries.
struct EdmInstance {
  AlphaVector alpha;
  EDM edm;
  StochasticEDM stoch;

  static EdmInstance from_alpha(const AlphaVector& a) {
    AlphaVector pos = a.positivized();
    EDM e = build_edm(pos);
    StochasticEDM s = column_stochasticize(e);
    return EdmInstance{std::move(pos), std::move(e), std::move(s)};
  }
};

// Vertex data of the outer polygon in ambient coordinates. Row k of u holds
// u_k[i] = (alpha_i - alpha_k)(alpha_i - alpha_{k+1}) with indices mod n; its
// entries share one sign (the wrap-around row is nonpositive), and dividing
// by the sum s_k yields the vertex v_k, a nonnegative unit-sum vector whose
// zeros sit exactly at coordinates k and k+1.
struct OuterVertices {
  std::vector<std::vector<Rational>> u;
  std::vector<Rational> s;
  QMatrix V;  // column k is v_k
};

inline OuterVertices outer_vertices(const AlphaVector& alpha) {
  const std::size_t n = alpha.n();
  OuterVertices out{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)),
                    std::vector<Rational>(n, Rational(0)), QMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const Rational& ak = alpha[k];
    const Rational& ak1 = alpha[(k + 1) % n];
    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      out.u[k][i] = (alpha[i] - ak) * (alpha[i] - ak1);
      const int sg = out.u[k][i].sign();
      pos += sg > 0;
      neg += sg < 0;
      out.s[k] += out.u[k][i];
    }
    if (pos > 0 && neg > 0)
      throw std::logic_error("outer: mixed signs in a vertex numerator");
    if (out.s[k].is_zero()) throw std::logic_error("outer: zero vertex normalizer");
    for (std::size_t i = 0; i < n; ++i) {
      out.V(i, k) = out.u[k][i] / out.s[k];
      if (out.V(i, k) < Rational(0)) throw std::logic_error("outer: negative vertex entry");
    }
    if (!out.V(k, k).is_zero() || !out.V((k + 1) % n, k).is_zero())
      throw std::logic_error("outer: vertex zeros misplaced");
  }
  return out;
}

// Exact coordinates on the plane H = col(D') intersected with the unit-sum
// hyperplane. Basis: first column of D' as origin, middle and last column
// offsets as axes; the axis sign is chosen so the outer polygon winds
// counterclockwise in the chart.
class AffineChart {
 public:
  static AffineChart for_instance(const EdmInstance& inst) {
    const QMatrix& dp = inst.stoch.Dprime;
    const std::size_t n = inst.stoch.n;
    AffineChart c;
    c.p0_ = dp.column(0);
    c.e1_ = difference(dp.column(n / 2), c.p0_);
    c.e2_ = difference(dp.column(n - 1), c.p0_);
    c.find_pivots();
    const OuterVertices ov = outer_vertices(inst.alpha);
    const auto q0 = c.forward(ov.V.column(0));
    const auto q1 = c.forward(ov.V.column(1));
    const auto q2 = c.forward(ov.V.column(2));
    if (!q0 || !q1 || !q2) throw std::logic_error("chart: outer vertex off the plane");
    if (orient(*q0, *q1, *q2) < Rational(0)) {
      for (Rational& v : c.e2_) v = -v;
      c.det_ = -c.det_;
    }
    return c;
  }

  std::size_t ambient() const { return p0_.size(); }

  // Chart coordinates of x, or nullopt when x is off the plane. The candidate
  // solution from the two pivot rows is checked against every coordinate, so
  // membership in H is decided exactly.
  std::optional<Vec2> forward(const std::vector<Rational>& x) const {
    const Rational b1 = x[r1_] - p0_[r1_];
    const Rational b2 = x[r2_] - p0_[r2_];
    const Rational s = (b1 * e2_[r2_] - b2 * e2_[r1_]) / det_;
    const Rational t = (e1_[r1_] * b2 - e1_[r2_] * b1) / det_;
    for (std::size_t i = 0; i < p0_.size(); ++i)
      if (p0_[i] + s * e1_[i] + t * e2_[i] != x[i]) return std::nullopt;
    return Vec2{s, t};
  }

  std::vector<Rational> backward(const Vec2& q) const {
    std::vector<Rational> x(p0_.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = p0_[i] + q.x * e1_[i] + q.y * e2_[i];
    return x;
  }

 private:
  static std::vector<Rational> difference(std::vector<Rational> a,
                                          const std::vector<Rational>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
  }

  void find_pivots() {
    const std::size_t n = p0_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rational d = e1_[i] * e2_[j] - e1_[j] * e2_[i];
        if (!d.is_zero()) {
          r1_ = i;
          r2_ = j;
          det_ = d;
          return;
        }
      }
    throw std::logic_error("chart: axes not independent");
  }

  std::vector<Rational> p0_, e1_, e2_;
  std::size_t r1_ = 0, r2_ = 0;
  Rational det_;
};

struct OuterPolygon {
  OuterVertices data;
  std::vector<Vec2> chart_vertices;  // index order preserved
  Polygon2 polygon;                  // strictly convex, counterclockwise
};

inline OuterPolygon outer_polygon(const EdmInstance& inst, const AffineChart& chart) {
  OuterVertices ov = outer_vertices(inst.alpha);
  std::vector<Vec2> pts;
  for (std::size_t k = 0; k < inst.stoch.n; ++k) {
    const auto q = chart.forward(ov.V.column(k));
    if (!q) throw std::logic_error("outer: vertex off the plane");
    pts.push_back(*q);
  }
  Polygon2 poly = Polygon2::from_ccw_convex(pts);
  return OuterPolygon{std::move(ov), std::move(pts), std::move(poly)};
}

enum class Extremality { Vertex, OnBoundary, Interior };

struct InnerPoints {
  std::vector<Vec2> points;  // column j of D' in the chart
  Polygon2 hull;
  std::vector<Extremality> status;  // per column
};

inline InnerPoints inner_points(const EdmInstance& inst, const AffineChart& chart) {
  std::vector<Vec2> pts;
  for (std::size_t j = 0; j < inst.stoch.n; ++j) {
    const auto q = chart.forward(inst.stoch.Dprime.column(j));
    if (!q) throw std::logic_error("inner: column off the plane");
    pts.push_back(*q);
  }
  Polygon2 hull = Polygon2::convex_hull(pts);
  std::vector<Extremality> status;
  for (const Vec2& p : pts) {
    bool is_vertex = false;
    for (const Vec2& v : hull.vertices())
      if (v == p) is_vertex = true;
    status.push_back(is_vertex            ? Extremality::Vertex
                     : on_boundary(hull, p) ? Extremality::OnBoundary
                                            : Extremality::Interior);
  }
  return InnerPoints{std::move(pts), std::move(hull), std::move(status)};
}

// The slack matrix of the simplex slice: facet x_i against vertex v_k is just
// the i-th coordinate of v_k, so the matrix is (v_1 | ... | v_n) itself.
inline QMatrix slack_matrix_simplex_slice(const OuterVertices& ov) { return ov.V; }

// Flip row and column signs to make every entry nonnegative, propagating the
// forced choices across the nonzero support; nullopt when no assignment works.
inline std::optional<QMatrix> sign_normalize(const QMatrix& s) {
  const std::size_t r = s.rows(), c = s.cols();
  std::vector<int> rs(r, 0), cs(c, 0);
  std::queue<std::pair<bool, std::size_t>> work;  // (is_row, index)
  for (std::size_t start = 0; start < r; ++start) {
    if (rs[start] != 0) continue;
    rs[start] = 1;
    work.emplace(true, start);
    while (!work.empty()) {
      const auto [is_row, idx] = work.front();
      work.pop();
      if (is_row) {
        for (std::size_t k = 0; k < c; ++k) {
          const int sg = s(idx, k).sign();
          if (sg == 0) continue;
          const int need = rs[idx] * sg;
          if (cs[k] == 0) {
            cs[k] = need;
            work.emplace(false, k);
          } else if (cs[k] != need) {
            return std::nullopt;
          }
        }
      } else {
        for (std::size_t i = 0; i < r; ++i) {
          const int sg = s(i, idx).sign();
          if (sg == 0) continue;
          const int need = cs[idx] * sg;
          if (rs[i] == 0) {
            rs[i] = need;
            work.emplace(true, i);
          } else if (rs[i] != need) {
            return std::nullopt;
          }
        }
      }
    }
  }
  QMatrix out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) {
      const int f = rs[i] * (cs[k] == 0 ? 1 : cs[k]);
      out(i, k) = f >= 0 ? s(i, k) : -s(i, k);
    }
  return out;
}

// Facet-by-vertex slacks of a polygon: row i pairs the edge from vertex i-1
// to vertex i with every vertex k via the oriented triangle area. A convex
// counterclockwise polygon yields nonnegative entries directly; a bare cycle
// is sign-normalized (and rejected when that is impossible).
inline QMatrix slack_matrix_polygon(const Polygon2& p) {
  if (p.is_degenerate()) throw std::invalid_argument("slack: degenerate polygon");
  const std::size_t n = p.size();
  QMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = p.vertex((i + n - 1) % n);
    const Vec2& b = p.vertex(i);
    for (std::size_t k = 0; k < n; ++k) s(i, k) = orient(a, b, p.vertex(k));
  }
  if (p.kind() == Polygon2::Kind::Convex) return s;
  const auto normalized = sign_normalize(s);
  if (!normalized)
    throw std::invalid_argument("slack: cycle admits no consistent sign pattern");
  return *normalized;
}

// Positive diagonals (d1, d2) with S1 = diag(d1) * S2 * diag(d2), found by
// propagating entry ratios across the common nonzero support, or nullopt.
// Columns may contain zeros, so the search walks connected components rather
// than anchoring on any single full-support row or column.
inline std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>>
scaling_equivalence(const QMatrix& s1, const QMatrix& s2) {
  if (s1.rows() != s2.rows() || s1.cols() != s2.cols()) return std::nullopt;
  const std::size_t r = s1.rows(), c = s1.cols();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k)
      if (s1(i, k).is_zero() != s2(i, k).is_zero()) return std::nullopt;
  std::vector<std::optional<Rational>> d1(r), d2(c);
  std::queue<std::pair<bool, std::size_t>> work;
  for (std::size_t start = 0; start < r; ++start) {
    if (d1[start]) continue;
    d1[start] = Rational(1);
    work.emplace(true, start);
    while (!work.empty()) {
      const auto [is_row, idx] = work.front();
      work.pop();
      if (is_row) {
        for (std::size_t k = 0; k < c; ++k) {
          if (s1(idx, k).is_zero()) continue;
          const Rational ratio = s1(idx, k) / s2(idx, k);
          if (ratio <= Rational(0)) return std::nullopt;
          const Rational need = ratio / *d1[idx];
          if (!d2[k]) {
            d2[k] = need;
            work.emplace(false, k);
          } else if (*d2[k] != need) {
            return std::nullopt;
          }
        }
      } else {
        for (std::size_t i = 0; i < r; ++i) {
          if (s1(i, idx).is_zero()) continue;
          const Rational ratio = s1(i, idx) / s2(i, idx);
          if (ratio <= Rational(0)) return std::nullopt;
          const Rational need = ratio / *d2[idx];
          if (!d1[i]) {
            d1[i] = need;
            work.emplace(true, i);
          } else if (*d1[i] != need) {
            return std::nullopt;
          }
        }
      }
    }
  }
  std::pair<std::vector<Rational>, std::vector<Rational>> out;
  for (const auto& v : d1) out.first.push_back(v.value_or(Rational(1)));
  for (const auto& v : d2) out.second.push_back(v.value_or(Rational(1)));
  return out;
}

// Point k of the auxiliary polygon: coordinates built from the reciprocals of
// the k-th and (k+1)-th generator entries. The half-sum of the coordinates is
// 1/(a*b) and the half-difference is 1/a + 1/b.
template <typename T>
std::pair<T, T> w_coordinates(const T& a, const T& b) {
  const T inv_a = T(1) / a;
  const T inv_b = T(1) / b;
  const T inv_ab = T(1) / (a * b);
  return {inv_a + inv_b + inv_ab, inv_ab - inv_a - inv_b};
}

inline Polygon2 w_polygon(const AlphaVector& alpha) {
  const std::size_t n = alpha.n();
  std::vector<Vec2> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational& a = alpha[k];
    const Rational& b = alpha[(k + 1) % n];
    if (a.sign() <= 0 || b.sign() <= 0)
      throw std::invalid_argument("w: generator entries must be positive");
    auto [x, y] = w_coordinates(a, b);
    pts.push_back(Vec2{std::move(x), std::move(y)});
  }
  return Polygon2::closed_cycle(std::move(pts));
}

// Checks, entirely in the rational-function field over indeterminate
// generator entries, that every slack of the auxiliary polygon factors as
//   factor * (a_{i-1}-a_{i+1}) / (a_{i-1} a_i^2 a_{i+1})
//          * 1/(a_k a_{k+1}) * (a_i-a_k)(a_i-a_{k+1})
// with indices mod n. The true identity has factor = 2; passing a different
// factor lets tests confirm the check can fail.
inline bool verify_slack_identity(std::size_t n, std::size_t symbolic_limit = 8,
                                  const Rational& factor = Rational(2)) {
  if (n < 3) throw std::invalid_argument("identity: need n >= 3");
  if (n > symbolic_limit)
    throw SymbolicLimitError("identity: n exceeds the symbolic limit");
  std::vector<std::pair<RatFunc, RatFunc>> w;
  const auto a = [](std::size_t i) { return RatFunc::variable(static_cast<unsigned>(i)); };
  for (std::size_t k = 0; k < n; ++k) w.push_back(w_coordinates(a(k), a((k + 1) % n)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im1 = (i + n - 1) % n, ip1 = (i + 1) % n;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t kp1 = (k + 1) % n;
      const RatFunc ux = w[i].first - w[im1].first;
      const RatFunc uy = w[i].second - w[im1].second;
      const RatFunc vx = w[k].first - w[im1].first;
      const RatFunc vy = w[k].second - w[im1].second;
      const RatFunc lhs = ux * vy - uy * vx;
      const RatFunc rhs = RatFunc(factor) * (a(im1) - a(ip1)) /
                          (a(im1) * a(i) * a(i) * a(ip1)) *
                          (RatFunc(1) / (a(k) * a(kp1))) * (a(i) - a(k)) *
                          (a(i) - a(kp1));
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

// Root recovery on the edge line through points k-1 and k of the auxiliary
// polygon: for any h on that line, sigma1 = half-sum and sigma2 = half-diff
// of h's coordinates are the elementary symmetric functions of a quadratic
// with 1/alpha_k among its roots.
struct VietaResult {
  Rational sigma1, sigma2;
  bool rational_roots;
  std::pair<Rational, Rational> roots;  // meaningful when rational_roots
};

inline VietaResult vieta_recover(const Polygon2& w, std::size_t k, const Vec2& h) {
  const std::size_t n = w.size();
  const Vec2& a = w.vertex((k + n - 1) % n);
  const Vec2& b = w.vertex(k % n);
  if (!orient(a, b, h).is_zero())
    throw std::invalid_argument("vieta: point is off the edge line");
  VietaResult out{(h.x + h.y) / Rational(2), (h.x - h.y) / Rational(2), false, {}};
  const Rational disc = out.sigma2 * out.sigma2 - Rational(4) * out.sigma1;
  if (const auto root = disc.sqrt_exact()) {
    out.rational_roots = true;
    out.roots = {(out.sigma2 - *root) / Rational(2), (out.sigma2 + *root) / Rational(2)};
  }
  return out;
}

inline bool every_edge_touched(const Polygon2& outer, const std::vector<Vec2>& pts) {
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const auto [a, b] = outer.edge(i);
    bool touched = false;
    for (const Vec2& p : pts)
      if (on_segment(a, b, p)) {
        touched = true;
        break;
      }
    if (!touched) return false;
  }
  return true;
}

}  // namespace edmrank
