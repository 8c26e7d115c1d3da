#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "edmrank/errors.hpp"
#include "edmrank/polygeom.hpp"
#include "edmrank/polygon.hpp"
#include "edmrank/rational.hpp"

namespace edmrank {

struct NestedInstance {
  std::vector<Vec2> inner;
  Polygon2 outer;

  static NestedInstance make(std::vector<Vec2> inner_pts, Polygon2 outer_poly) {
    if (inner_pts.empty()) throw std::invalid_argument("nested: no inner points");
    if (!outer_poly.is_convex())
      throw std::invalid_argument("nested: outer polygon must be convex");
    for (const Vec2& p : inner_pts)
      if (!polygon_contains(outer_poly, p))
        throw InfeasibleError("nested: inner point outside the outer polygon");
    return NestedInstance{std::move(inner_pts), std::move(outer_poly)};
  }
};

// A nested polygon with exact containment witnesses: every inner point as a
// convex combination of the polygon's vertices, and every polygon vertex as a
// convex combination of the outer polygon's vertices.
struct NestedCertificate {
  Polygon2 polygon;
  std::size_t k;
  std::vector<std::vector<Rational>> inner_coeffs;
  std::vector<std::vector<Rational>> vertex_coeffs;
};

inline bool check_nested(const NestedCertificate& cert, const NestedInstance& inst) {
  if (cert.k != cert.polygon.size()) return false;
  if (cert.inner_coeffs.size() != inst.inner.size()) return false;
  if (cert.vertex_coeffs.size() != cert.polygon.size()) return false;
  const auto reproduces = [](const std::vector<Rational>& coeffs, const Polygon2& base,
                             const Vec2& target) {
    if (coeffs.size() != base.size()) return false;
    Rational sum(0);
    Vec2 acc{Rational(0), Rational(0)};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] < Rational(0)) return false;
      sum += coeffs[i];
      acc = acc + coeffs[i] * base.vertex(i);
    }
    return sum == Rational(1) && acc == target;
  };
  for (std::size_t i = 0; i < inst.inner.size(); ++i)
    if (!reproduces(cert.inner_coeffs[i], cert.polygon, inst.inner[i])) return false;
  for (std::size_t i = 0; i < cert.polygon.size(); ++i)
    if (!reproduces(cert.vertex_coeffs[i], inst.outer, cert.polygon.vertex(i)))
      return false;
  return true;
}

namespace nested_detail {

// Moebius map t -> (a t + b) / (c t + d). A zero determinant encodes a
// constant map, stored as ((0, value_num), (0, value_den)).
struct Mat2 {
  Rational a, b, c, d;

  static Mat2 identity() { return {Rational(1), Rational(0), Rational(0), Rational(1)}; }
  static Mat2 shift(const Rational& s) {
    return {Rational(1), s, Rational(0), Rational(1)};
  }

  friend Mat2 operator*(const Mat2& m, const Mat2& n) {  // composition m after n
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }

  Rational eval(const Rational& t) const { return (a * t + b) / (c * t + d); }

  bool is_constant() const { return (a * d - b * c).is_zero(); }

  // Preimage of y; nullopt for constant maps.
  std::optional<Rational> eval_inverse(const Rational& y) const {
    const Rational den = a - c * y;
    if (den.is_zero()) return std::nullopt;
    return (d * y - b) / den;
  }

  // Clear denominators and divide by the common integer factor; the map is
  // unchanged and entry growth across long compositions stays bounded.
  void reduce() {
    mpz_class l(1);
    for (const Rational* e : {&a, &b, &c, &d}) l = lcm(l, e->den());
    mpz_class g(0);
    for (Rational* e : {&a, &b, &c, &d}) {
      *e *= Rational(l);
      g = gcd(g, e->num());
    }
    if (g > 1)
      for (Rational* e : {&a, &b, &c, &d}) *e /= Rational(g);
  }
};

struct RayExit {
  Vec2 point;
  std::size_t edge;
  Rational tmax;
};

// Greedy boundary traversal of the outer polygon around a fixed inner hull.
// Boundary positions are rational parameters: position i + tau is the point
// (1-tau) V_i + tau V_{i+1}. The greedy step from x draws the supporting ray
// of the hull that advances counterclockwise as far as possible and exits the
// outer boundary; the lifted step map is monotone and piecewise Moebius.
class GreedyBoundary {
 public:
  GreedyBoundary(const Polygon2& outer, const Polygon2& hull)
      : outer_(outer), hull_(hull), n_(outer.size()) {}

  Rational period() const { return Rational(static_cast<long>(n_)); }

  Vec2 point_at(const Rational& t) const {
    const Rational tr = reduce_param(t);
    const long i = tr.floor().get_si();
    const Rational tau = tr - Rational(i);
    const Vec2& a = outer_.vertex(static_cast<std::size_t>(i));
    const Vec2& b = outer_.vertex(static_cast<std::size_t>(i) + 1);
    return a + tau * (b - a);
  }

  Rational param_of(const Vec2& p) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const auto [a, b] = outer_.edge(i);
      if (!on_segment(a, b, p)) continue;
      const Rational tau = dot(p - a, b - a) / dot(b - a, b - a);
      return Rational(static_cast<long>(i)) + tau;
    }
    throw std::logic_error("greedy: point not on the outer boundary");
  }

  // The hull vertex c != x with the whole hull weakly left of the ray x -> c;
  // among collinear candidates the farthest wins, so the ray's contact
  // segment is fully accounted for.
  Vec2 contact(const Vec2& x) const {
    std::optional<Vec2> best;
    Rational best_dist(0);
    for (const Vec2& c : hull_.vertices()) {
      if (c == x) continue;
      bool ok = true;
      for (const Vec2& q : hull_.vertices())
        if (cross(c - x, q - x) < Rational(0)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      const Rational dist = dot(c - x, c - x);
      if (!best || dist > best_dist) {
        best = c;
        best_dist = dist;
      }
    }
    if (!best) throw std::logic_error("greedy: no supporting contact from boundary point");
    return *best;
  }

  // Last point of the outer region on the ray x + s g (s >= 0), as the
  // tightest of the half-plane constraints that the ray eventually violates.
  RayExit ray_exit(const Vec2& x, const Vec2& g) const {
    std::optional<Rational> tmax;
    std::size_t edge = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      const auto [va, vb] = outer_.edge(j);
      const Rational slope = cross(vb - va, g);
      if (slope >= Rational(0)) continue;
      const Rational bound = orient(va, vb, x) / -slope;
      if (!tmax || bound < *tmax) {
        tmax = bound;
        edge = j;
      }
    }
    if (!tmax) throw std::logic_error("greedy: unbounded ray in a bounded polygon");
    return RayExit{x + *tmax * g, edge, *tmax};
  }

  // Lifted greedy step: strictly increasing, gains less than one period.
  Rational step(const Rational& t) const {
    const Vec2 x = point_at(t);
    const Vec2 c = contact(x);
    const RayExit exit = ray_exit(x, c - x);
    Rational lifted = param_of(exit.point);
    const Rational base = t - reduce_param(t);
    lifted += base;
    while (lifted <= t) lifted += period();
    while (lifted > t + period()) lifted -= period();
    return lifted;
  }

  std::size_t wraps_from(const Rational& t0, std::size_t cap) const {
    Rational t = t0;
    const Rational goal = t0 + period();
    for (std::size_t steps = 1; steps <= cap; ++steps) {
      t = step(t);
      if (t >= goal) return steps;
    }
    throw std::logic_error("greedy: wrap count exceeded the step cap");
  }

  // Parameters where the greedy step map can change shape: outer vertices,
  // boundary hits of every inner hull edge line, boundary hits of every line
  // through an outer vertex and a hull vertex, and hull vertices lying on the
  // boundary themselves.
  std::vector<Rational> base_breakpoints() const {
    std::set<Rational> b;
    for (std::size_t i = 0; i < n_; ++i) b.insert(Rational(static_cast<long>(i)));
    std::vector<std::pair<Vec2, Vec2>> lines;
    for (std::size_t j = 0; j < hull_.size(); ++j) {
      if (hull_.size() >= 2) lines.push_back({hull_.vertex(j), hull_.vertex(j + 1)});
      for (std::size_t i = 0; i < n_; ++i) lines.push_back({outer_.vertex(i), hull_.vertex(j)});
    }
    for (const auto& [p1, p2] : lines) {
      if (p1 == p2) continue;
      for (std::size_t i = 0; i < n_; ++i) {
        const auto [va, vb] = outer_.edge(i);
        const Rational a0 = orient(p1, p2, va);
        const Rational slope = cross(p2 - p1, vb - va);
        if (slope.is_zero()) continue;  // parallel, or the whole edge lies on the line
        const Rational tau = -a0 / slope;
        if (tau >= Rational(0) && tau <= Rational(1))
          b.insert(Rational(static_cast<long>(i)) + tau);
      }
    }
    for (const Vec2& q : hull_.vertices())
      if (on_boundary(outer_, q)) b.insert(param_of(q));
    std::vector<Rational> out(b.begin(), b.end());
    if (out.back() == period()) out.pop_back();
    return out;
  }

  // Moebius matrix of the step map on one breakpoint-free interval inside
  // [0, n). With x(t) on outer edge i, contact c and exit edge j fixed, the
  // exit parameter is a ratio of two functions linear in t (the quadratic
  // terms cancel in the cross products).
  Mat2 piece_matrix(const Rational& lo, const Rational& hi) const {
    const Rational mid = (lo + hi) / Rational(2);
    const Vec2 x = point_at(mid);
    const Vec2 cpt = contact(x);
    const RayExit exit = ray_exit(x, cpt - x);
    const long i = mid.floor().get_si();
    const Vec2& va = outer_.vertex(static_cast<std::size_t>(i));
    const Vec2 e = outer_.vertex(static_cast<std::size_t>(i) + 1) - va;
    const Vec2& vc = outer_.vertex(exit.edge);
    const Vec2 f = outer_.vertex(exit.edge + 1) - vc;
    // num(u) and den(u) in u = t - i for the exit-edge coordinate num/den.
    const Rational n0 = cross(va - vc, cpt - va);
    const Rational n1 = cross(e, cpt - va) - cross(va - vc, e);
    const Rational d0 = cross(f, cpt - va);
    const Rational d1 = -cross(f, e);
    // Lift offset so that the value continues the strictly increasing walk.
    const Rational raw = Rational(static_cast<long>(exit.edge)) +
                         (n0 + n1 * (mid - Rational(i))) / (d0 + d1 * (mid - Rational(i)));
    Rational offset = Rational(static_cast<long>(exit.edge));
    {
      Rational value = raw;
      while (value <= mid) {
        value += period();
        offset += period();
      }
      while (value > mid + period()) {
        value -= period();
        offset -= period();
      }
    }
    // In t: num_t = n1 t + (n0 - n1 i), den_t = d1 t + (d0 - d1 i),
    // f(t) = offset + num_t / den_t.
    Mat2 m;
    m.c = d1;
    m.d = d0 - d1 * Rational(i);
    m.a = offset * m.c + n1;
    m.b = offset * m.d + (n0 - n1 * Rational(i));
    if (m.is_constant()) {
      Rational at = mid;
      Rational den = m.c * at + m.d;
      if (den.is_zero()) {
        at = (lo + mid) / Rational(2);
        den = m.c * at + m.d;
      }
      const Rational num = m.a * at + m.b;
      m = Mat2{Rational(0), num, Rational(0), den};
    }
    m.reduce();
    return m;
  }

 private:
  Rational reduce_param(const Rational& t) const {
    const Rational w((t / period()).floor());
    return t - w * period();
  }

  const Polygon2& outer_;
  const Polygon2& hull_;
  std::size_t n_;
};

// Breakpoint-free intervals of the k-fold step map, then a quadratic
// feasibility test per interval. All arithmetic rational; every candidate
// witness is re-verified by running the greedy step map itself.
class NestedSolver {
 public:
  NestedSolver(const Polygon2& outer, const Polygon2& hull)
      : geo_(outer, hull), base_(geo_.base_breakpoints()) {
    for (std::size_t p = 0; p + 1 <= base_.size(); ++p) {
      const Rational lo = base_[p];
      const Rational hi = p + 1 < base_.size() ? base_[p + 1] : geo_.period();
      piece_cache_.push_back(geo_.piece_matrix(lo, hi));
    }
  }

  const GreedyBoundary& geometry() const { return geo_; }

  // Does a nested polygon with at most k vertices exist? Returns a boundary
  // parameter from which the greedy walk wraps within k steps.
  std::optional<Rational> decide(std::size_t k) const {
    const std::vector<Rational> breaks = refined_breakpoints(k);
    std::vector<Rational> candidates;
    const Rational period = geo_.period();
    for (std::size_t p = 0; p < breaks.size(); ++p) {
      const Rational lo = breaks[p];
      const Rational hi = p + 1 < breaks.size() ? breaks[p + 1] : period;
      const Mat2 m = walk_matrix(lo, hi, k);
      // f(t) >= t + n on [lo, hi] iff sign(den) * (num - (t + n) den) >= 0;
      // the left side is a quadratic, so its maximum sits at an endpoint or,
      // when concave, at the rational vertex.
      const Rational mid = (lo + hi) / Rational(2);
      const int sigma = (m.c * mid + m.d).sign();
      if (sigma == 0) throw std::logic_error("nested: singular step map on a piece");
      const Rational s(sigma);
      const Rational qa = s * -m.c;
      const Rational qb = s * (m.a - m.d - m.c * period);
      const Rational qc = s * (m.b - m.d * period);
      const auto q = [&](const Rational& t) { return (qa * t + qb) * t + qc; };
      if (q(lo) >= Rational(0)) candidates.push_back(lo);
      if (q(hi) >= Rational(0)) candidates.push_back(hi);
      if (qa < Rational(0)) {
        const Rational tv = qb / (Rational(-2) * qa);
        if (lo < tv && tv < hi && q(tv) >= Rational(0)) candidates.push_back(tv);
      }
    }
    for (const Rational& t : candidates)
      if (verified_wrap(t, k)) return t;
    return std::nullopt;
  }

  bool verified_wrap(const Rational& t0, std::size_t k) const {
    Rational t = t0;
    const Rational goal = t0 + geo_.period();
    for (std::size_t j = 0; j < k; ++j) {
      t = geo_.step(t);
      if (t >= goal) return true;
    }
    return false;
  }

 private:
  // base breakpoints plus their pullbacks through up to k-1 applications of
  // the step map, so the k-fold composition is a single Moebius map between
  // consecutive results.
  std::vector<Rational> refined_breakpoints(std::size_t k) const {
    std::set<Rational> t(base_.begin(), base_.end());
    const Rational period = geo_.period();
    for (std::size_t round = 1; round + 1 <= k; ++round) {
      std::vector<Rational> targets(t.begin(), t.end());
      std::vector<Rational> added;
      for (std::size_t p = 0; p < base_.size(); ++p) {
        const Rational lo = base_[p];
        const Rational hi = p + 1 < base_.size() ? base_[p + 1] : period;
        const Mat2& m = piece_cache_[p];
        if (m.is_constant()) continue;
        Rational ylo = m.eval(lo), yhi = m.eval(hi);
        if (ylo > yhi) std::swap(ylo, yhi);
        // Shift the target grid over the image interval.
        const Rational w0((ylo / period).floor());
        for (Rational w = w0; w * period <= yhi; w += Rational(1)) {
          auto it = std::lower_bound(targets.begin(), targets.end(), ylo - w * period);
          for (; it != targets.end() && *it + w * period <= yhi; ++it) {
            const auto pre = m.eval_inverse(*it + w * period);
            if (pre && lo < *pre && *pre < hi) added.push_back(*pre);
          }
        }
      }
      const std::size_t before = t.size();
      t.insert(added.begin(), added.end());
      if (t.size() == before) break;
    }
    return std::vector<Rational>(t.begin(), t.end());
  }

  Mat2 walk_matrix(const Rational& lo, const Rational& hi, std::size_t k) const {
    const Rational period = geo_.period();
    Mat2 m = Mat2::identity();
    for (std::size_t stepno = 0; stepno < k; ++stepno) {
      const Rational u = m.eval(lo), v = m.eval(hi);
      const Rational mid = (u + v) / Rational(2);
      const Rational w((mid / period).floor());
      const Rational midr = mid - w * period;
      std::size_t idx = std::upper_bound(base_.begin(), base_.end(), midr) - base_.begin();
      idx = idx == 0 ? base_.size() - 1 : idx - 1;
      const Rational shift = w * period;
      Mat2 next = Mat2::shift(shift) * piece_cache_[idx] * Mat2::shift(-shift) * m;
      if (next.is_constant()) {
        Rational at = (lo + hi) / Rational(2);
        Rational den = next.c * at + next.d;
        if (den.is_zero()) {
          at = (lo + at) / Rational(2);
          den = next.c * at + next.d;
        }
        next = Mat2{Rational(0), next.a * at + next.b, Rational(0), den};
      }
      next.reduce();
      m = next;
    }
    return m;
  }

  GreedyBoundary geo_;
  std::vector<Rational> base_;
  std::vector<Mat2> piece_cache_;
};

inline NestedCertificate certify(const Polygon2& polygon, const NestedInstance& inst) {
  NestedCertificate cert{polygon, polygon.size(), {}, {}};
  for (const Vec2& p : inst.inner) {
    auto coeffs = convex_coefficients(polygon, p);
    if (!coeffs) throw std::logic_error("nested: inner point escaped the solution");
    cert.inner_coeffs.push_back(std::move(*coeffs));
  }
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    auto coeffs = convex_coefficients(inst.outer, polygon.vertex(i));
    if (!coeffs) throw std::logic_error("nested: solution vertex escaped the outer polygon");
    cert.vertex_coeffs.push_back(std::move(*coeffs));
  }
  return cert;
}

inline Polygon2 polygon_from_walk(const GreedyBoundary& geo, const Rational& t0,
                                  std::size_t cap) {
  std::vector<Vec2> pts{geo.point_at(t0)};
  Rational t = t0;
  const Rational goal = t0 + geo.period();
  for (std::size_t j = 0; j < cap; ++j) {
    t = geo.step(t);
    if (t >= goal) break;
    pts.push_back(geo.point_at(t));
  }
  return Polygon2::convex_hull(pts);
}

}  // namespace nested_detail

// Minimum-vertex polygon nested between the convex hull of the inner points
// and the outer polygon, with exact certificates. Degenerate inner hulls
// short-circuit to the hull itself (one or two vertices).
inline NestedCertificate min_nested_polygon(const NestedInstance& inst) {
  const Polygon2 hull = Polygon2::convex_hull(inst.inner);
  if (hull.is_degenerate()) {
    NestedCertificate cert = nested_detail::certify(hull, inst);
    if (!check_nested(cert, inst)) throw std::logic_error("nested: certificate failed");
    return cert;
  }
  const nested_detail::NestedSolver solver(inst.outer, hull);
  const auto& geo = solver.geometry();
  std::size_t best_k =
      geo.wraps_from(Rational(0), 2 * hull.size() + 8);
  Polygon2 best = nested_detail::polygon_from_walk(geo, Rational(0), best_k);
  best_k = best.size();
  while (best_k > 3) {
    const auto witness = solver.decide(best_k - 1);
    if (!witness) break;
    const Polygon2 p = nested_detail::polygon_from_walk(geo, *witness, best_k - 1);
    if (p.size() >= best_k) throw std::logic_error("nested: witness did not shrink the answer");
    best = p;
    best_k = p.size();
  }
  NestedCertificate cert = nested_detail::certify(best, inst);
  if (!check_nested(cert, inst)) throw std::logic_error("nested: certificate failed");
  return cert;
}

// Vertex count of the minimum polygon nested between the stochastic matrix's
// column points and the outer polygon; an upper bound for the nonnegative
// rank in its column-space-restricted form, and exact for that form.
inline int restricted_rank_plus(const EdmInstance& inst) {
  const AffineChart chart = AffineChart::for_instance(inst);
  const OuterPolygon op = outer_polygon(inst, chart);
  const InnerPoints ip = inner_points(inst, chart);
  const NestedInstance ni = NestedInstance::make(ip.points, op.polygon);
  return static_cast<int>(min_nested_polygon(ni).k);
}

// Does every edge of the outer polygon carry at least one column point?
inline bool edge_touching_audit(const EdmInstance& inst) {
  const AffineChart chart = AffineChart::for_instance(inst);
  const OuterPolygon op = outer_polygon(inst, chart);
  const InnerPoints ip = inner_points(inst, chart);
  return every_edge_touched(op.polygon, ip.points);
}

}  // namespace edmrank
