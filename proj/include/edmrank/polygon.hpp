#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "edmrank/rational.hpp"

namespace edmrank {

struct Vec2 {
  Rational x, y;

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(const Rational& s, const Vec2& v) { return {s * v.x, s * v.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

inline Rational cross(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const Vec2& u, const Vec2& v) { return u.x * v.x + u.y * v.y; }

// Sign of the turn o -> a -> b: positive for a left (counterclockwise) turn.
inline Rational orient(const Vec2& o, const Vec2& a, const Vec2& b) {
  return cross(a - o, b - o);
}

inline bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  if (!orient(a, b, p).is_zero()) return false;
  return dot(p - a, b - a) >= Rational(0) && dot(p - b, a - b) >= Rational(0);
}

// Exact polygon in the plane. Convex instances are strictly convex (no three
// collinear vertices) in counterclockwise order; a Cycle stores vertices in a
// given cyclic order without any convexity promise; single points and
// segments are representable and flagged.
class Polygon2 {
 public:
  enum class Kind { Point, Segment, Convex, Cycle };

  // Strictly convex hull of arbitrary points; collapses to Segment or Point
  // when the input is degenerate.
  static Polygon2 convex_hull(std::vector<Vec2> pts) {
    if (pts.empty()) throw std::invalid_argument("polygon: no points");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) return Polygon2(Kind::Point, std::move(pts));
    bool all_collinear = true;
    for (std::size_t i = 2; i < pts.size() && all_collinear; ++i)
      if (!orient(pts[0], pts[1], pts[i]).is_zero()) all_collinear = false;
    if (all_collinear) return Polygon2(Kind::Segment, {pts.front(), pts.back()});
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= Rational(0)) --k;
      h[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
      while (k >= lower && orient(h[k - 2], h[k - 1], pts[i]) <= Rational(0)) --k;
      h[k++] = pts[i];
    }
    h.resize(k - 1);
    return Polygon2(Kind::Convex, std::move(h));
  }

  // Vertices that are already a strictly convex counterclockwise cycle;
  // anything else is rejected.
  static Polygon2 from_ccw_convex(std::vector<Vec2> verts) {
    if (verts.size() < 3) throw std::invalid_argument("polygon: convex cycle needs 3 vertices");
    const Polygon2 hull = convex_hull(verts);
    if (hull.kind() != Kind::Convex || hull.size() != verts.size())
      throw std::invalid_argument("polygon: vertices not in strictly convex position");
    std::size_t start = 0;
    while (start < verts.size() && !(verts[start] == hull.verts_[0])) ++start;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (!(verts[(start + i) % verts.size()] == hull.verts_[i]))
        throw std::invalid_argument("polygon: vertices not in counterclockwise order");
    return Polygon2(Kind::Convex, std::move(verts));
  }

  static Polygon2 closed_cycle(std::vector<Vec2> verts) {
    if (verts.size() < 3) throw std::invalid_argument("polygon: cycle needs 3 vertices");
    return Polygon2(Kind::Cycle, std::move(verts));
  }

  static Polygon2 point(Vec2 p) { return Polygon2(Kind::Point, {std::move(p)}); }
  static Polygon2 segment(Vec2 a, Vec2 b) {
    if (a == b) return point(a);
    return Polygon2(Kind::Segment, {std::move(a), std::move(b)});
  }

  Kind kind() const { return kind_; }
  bool is_convex() const { return kind_ == Kind::Convex; }
  bool is_degenerate() const { return kind_ == Kind::Point || kind_ == Kind::Segment; }
  std::size_t size() const { return verts_.size(); }
  const std::vector<Vec2>& vertices() const { return verts_; }
  const Vec2& vertex(std::size_t i) const { return verts_[i % verts_.size()]; }

  std::pair<Vec2, Vec2> edge(std::size_t i) const {
    return {verts_[i % verts_.size()], verts_[(i + 1) % verts_.size()]};
  }

  // Twice the signed area (shoelace); positive for counterclockwise convex.
  Rational doubled_area() const {
    Rational a(0);
    for (std::size_t i = 0; i < verts_.size(); ++i)
      a += cross(verts_[i], verts_[(i + 1) % verts_.size()]);
    return a;
  }

 private:
  Polygon2(Kind k, std::vector<Vec2> v) : kind_(k), verts_(std::move(v)) {}

  static bool lex_less(const Vec2& a, const Vec2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }

  Kind kind_;
  std::vector<Vec2> verts_;
};

// Non-strict containment, exact.
inline bool polygon_contains(const Polygon2& p, const Vec2& q) {
  switch (p.kind()) {
    case Polygon2::Kind::Point:
      return p.vertex(0) == q;
    case Polygon2::Kind::Segment:
      return on_segment(p.vertex(0), p.vertex(1), q);
    case Polygon2::Kind::Convex: {
      for (std::size_t i = 0; i < p.size(); ++i)
        if (orient(p.vertex(i), p.vertex(i + 1), q) < Rational(0)) return false;
      return true;
    }
    case Polygon2::Kind::Cycle:
      throw std::invalid_argument("polygon: containment undefined for a bare cycle");
  }
  return false;
}

inline bool on_boundary(const Polygon2& p, const Vec2& q) {
  if (p.is_degenerate()) return polygon_contains(p, q);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto [a, b] = p.edge(i);
    if (on_segment(a, b, q)) return true;
  }
  return false;
}

// Nonnegative coefficients over p's vertices summing to 1 that reproduce q,
// or nullopt when q is outside. Found by fanning triangles from vertex 0 and
// solving exact barycentric coordinates.
inline std::optional<std::vector<Rational>> convex_coefficients(const Polygon2& p,
                                                                const Vec2& q) {
  const std::size_t n = p.size();
  std::vector<Rational> coeffs(n, Rational(0));
  switch (p.kind()) {
    case Polygon2::Kind::Point:
      if (!(p.vertex(0) == q)) return std::nullopt;
      coeffs[0] = Rational(1);
      return coeffs;
    case Polygon2::Kind::Segment: {
      const Vec2 a = p.vertex(0), b = p.vertex(1);
      if (!on_segment(a, b, q)) return std::nullopt;
      const Rational t = dot(q - a, b - a) / dot(b - a, b - a);
      coeffs[0] = Rational(1) - t;
      coeffs[1] = t;
      return coeffs;
    }
    case Polygon2::Kind::Convex: {
      if (!polygon_contains(p, q)) return std::nullopt;
      const Vec2& v0 = p.vertex(0);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const Vec2& a = p.vertex(i);
        const Vec2& b = p.vertex(i + 1);
        const Rational area2 = orient(v0, a, b);
        const Rational la = orient(v0, q, b);
        const Rational lb = orient(v0, a, q);
        const Rational l0 = area2 - la - lb;
        if (la < Rational(0) || lb < Rational(0) || l0 < Rational(0)) continue;
        coeffs[0] = l0 / area2;
        coeffs[i] = la / area2;
        coeffs[i + 1] = lb / area2;
        return coeffs;
      }
      return std::nullopt;
    }
    case Polygon2::Kind::Cycle:
      throw std::invalid_argument("polygon: coefficients undefined for a bare cycle");
  }
  return std::nullopt;
}

}  // namespace edmrank
