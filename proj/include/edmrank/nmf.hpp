#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "edmrank/errors.hpp"
#include "edmrank/matrix.hpp"
#include "edmrank/nested.hpp"
#include "edmrank/polygeom.hpp"
#include "edmrank/rational.hpp"

namespace edmrank {

using DMatrix = Matrix<double>;

// A nonnegative factorization B*C of a target, either exact over the
// rationals or approximate in doubles with a recorded max-abs residual.
struct Factorization {
  bool exact = true;
  QMatrix B{0, 0};
  QMatrix C{0, 0};
  DMatrix Bf{0, 0};
  DMatrix Cf{0, 0};
  std::optional<double> residual;

  std::size_t terms() const { return exact ? B.cols() : Bf.cols(); }

  static Factorization exact_pair(QMatrix b, QMatrix c) {
    if (b.cols() != c.rows()) throw std::invalid_argument("factorization: shape mismatch");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(i, j) < Rational(0))
          throw std::invalid_argument("factorization: negative entry in B");
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j)
        if (c(i, j) < Rational(0))
          throw std::invalid_argument("factorization: negative entry in C");
    Factorization f;
    f.exact = true;
    f.B = std::move(b);
    f.C = std::move(c);
    return f;
  }

  static Factorization approx_pair(DMatrix b, DMatrix c, double res) {
    if (b.cols() != c.rows()) throw std::invalid_argument("factorization: shape mismatch");
    Factorization f;
    f.exact = false;
    f.Bf = std::move(b);
    f.Cf = std::move(c);
    f.residual = res;
    return f;
  }
};

namespace nmf_detail {

inline double max_abs_residual(const DMatrix& a, const DMatrix& b, const DMatrix& c) {
  const DMatrix p = b * c;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - p(i, j)));
  return worst;
}

}  // namespace nmf_detail

// Rescale so the columns of B are stochastic, moving the scale into C; the
// product is unchanged. A zero column cannot be rescaled: that rank-one term
// vanishes from the product and is dropped, shrinking the inner dimension.
inline Factorization normalize_columns(const Factorization& f) {
  if (f.exact) {
    std::vector<std::size_t> keep;
    std::vector<Rational> sums;
    for (std::size_t j = 0; j < f.B.cols(); ++j) {
      Rational s(0);
      for (std::size_t i = 0; i < f.B.rows(); ++i) s += f.B(i, j);
      if (!s.is_zero()) {
        keep.push_back(j);
        sums.push_back(s);
      }
    }
    QMatrix b(f.B.rows(), keep.size());
    QMatrix c(keep.size(), f.C.cols());
    for (std::size_t jj = 0; jj < keep.size(); ++jj) {
      for (std::size_t i = 0; i < f.B.rows(); ++i) b(i, jj) = f.B(i, keep[jj]) / sums[jj];
      for (std::size_t j = 0; j < f.C.cols(); ++j) c(jj, j) = sums[jj] * f.C(keep[jj], j);
    }
    return Factorization::exact_pair(std::move(b), std::move(c));
  }
  const DMatrix before = f.Bf * f.Cf;
  std::vector<std::size_t> keep;
  std::vector<double> sums;
  for (std::size_t j = 0; j < f.Bf.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.Bf.rows(); ++i) s += f.Bf(i, j);
    if (s != 0.0) {
      keep.push_back(j);
      sums.push_back(s);
    }
  }
  DMatrix b(f.Bf.rows(), keep.size());
  DMatrix c(keep.size(), f.Cf.cols());
  for (std::size_t jj = 0; jj < keep.size(); ++jj) {
    for (std::size_t i = 0; i < f.Bf.rows(); ++i) b(i, jj) = f.Bf(i, keep[jj]) / sums[jj];
    for (std::size_t j = 0; j < f.Cf.cols(); ++j) c(jj, j) = sums[jj] * f.Cf(keep[jj], j);
  }
  // Rounding can drift the float product, so fold the drift into the
  // recorded residual instead of claiming the old one.
  double drift = 0.0;
  const DMatrix after = b * c;
  for (std::size_t i = 0; i < after.rows(); ++i)
    for (std::size_t j = 0; j < after.cols(); ++j)
      drift = std::max(drift, std::abs(after(i, j) - before(i, j)));
  return Factorization::approx_pair(std::move(b), std::move(c),
                                    f.residual.value_or(0.0) + drift);
}

inline bool verify_factorization(const QMatrix& a, const Factorization& f, double tol) {
  if (f.exact) {
    if (f.B.rows() != a.rows() || f.C.cols() != a.cols() || f.B.cols() != f.C.rows())
      return false;
    return f.B * f.C == a;
  }
  if (f.Bf.rows() != a.rows() || f.Cf.cols() != a.cols() || f.Bf.cols() != f.Cf.rows())
    return false;
  DMatrix ad(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) ad(i, j) = a(i, j).to_double();
  return nmf_detail::max_abs_residual(ad, f.Bf, f.Cf) <= tol;
}

// Multiplicative-update descent from several random nonnegative starts.
// Returns the best factorization over all seeds if its max-abs residual
// meets the tolerance; absence proves nothing about the true rank. Seeds own
// independent generator state and merge by residual, lowest seed winning ties.
inline std::optional<Factorization> nmf_search(const DMatrix& a, std::size_t r,
                                               std::size_t seeds, std::size_t iters,
                                               double tol,
                                               std::uint64_t base_seed = 0) {
  if (r == 0) throw std::invalid_argument("nmf: rank must be positive");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) < 0.0) throw std::invalid_argument("nmf: negative target entry");
  constexpr double kFloor = 1e-12;
  const std::size_t n = a.rows(), m = a.cols();
  std::optional<Factorization> best;
  for (std::size_t s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(base_seed + s);
    std::uniform_real_distribution<double> init(0.05, 1.0);
    DMatrix b(n, r), c(r, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < r; ++j) b(i, j) = init(rng);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < m; ++j) c(i, j) = init(rng);
    for (std::size_t it = 0; it < iters; ++it) {
      const DMatrix bt = b.transpose();
      const DMatrix bta = bt * a;
      const DMatrix btbc = bt * b * c;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m; ++j)
          c(i, j) = std::max(kFloor, c(i, j) * bta(i, j) / (btbc(i, j) + kFloor));
      const DMatrix ct = c.transpose();
      const DMatrix act = a * ct;
      const DMatrix bcct = b * (c * ct);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r; ++j)
          b(i, j) = std::max(kFloor, b(i, j) * act(i, j) / (bcct(i, j) + kFloor));
    }
    const double res = nmf_detail::max_abs_residual(a, b, c);
    if (!best || res < *best->residual)
      best = Factorization::approx_pair(b, c, res);
  }
  if (best && *best->residual <= tol) return best;
  return std::nullopt;
}

struct NestedFromFactorization {
  NestedCertificate cert;
  std::size_t r;  // rank-one terms supplied
  std::size_t k;  // vertices the intersection polygon actually has
};

// The geometric reading of an exact restricted factorization of the
// stochastic matrix: the columns of B are points of the simplex slice, their
// hull is squeezed between the column points and the outer polygon, and its
// vertex count is at most the number of terms.
inline NestedFromFactorization factorization_to_nested(const Factorization& f,
                                                       const EdmInstance& inst) {
  if (!f.exact) throw std::invalid_argument("nested construction needs an exact factorization");
  const QMatrix& target = inst.stoch.Dprime;
  if (!(f.B * f.C == target))
    throw std::invalid_argument("nested construction: factorization does not reproduce the target");
  for (std::size_t j = 0; j < f.B.cols(); ++j) {
    Rational s(0);
    for (std::size_t i = 0; i < f.B.rows(); ++i) s += f.B(i, j);
    if (s != Rational(1))
      throw std::invalid_argument("nested construction: B is not column-stochastic");
  }
  if (!columns_in_span(target, f.B))
    throw InfeasibleError(
        "nested construction: factorization is not restricted to the target's column space");

  const AffineChart chart = AffineChart::for_instance(inst);
  std::vector<Vec2> bpoints;
  for (std::size_t j = 0; j < f.B.cols(); ++j) {
    const auto mapped = chart.forward(f.B.column(j));
    if (!mapped)
      throw std::logic_error("nested construction: restricted column escaped the chart");
    bpoints.push_back(*mapped);
  }
  const Polygon2 region = Polygon2::convex_hull(bpoints);
  const OuterPolygon op = outer_polygon(inst, chart);
  const InnerPoints ip = inner_points(inst, chart);
  const NestedInstance ni = NestedInstance::make(ip.points, op.polygon);
  NestedCertificate cert = nested_detail::certify(region, ni);
  if (!check_nested(cert, ni))
    throw std::logic_error("nested construction: certificate failed its own check");
  return NestedFromFactorization{std::move(cert), f.B.cols(), region.size()};
}

}  // namespace edmrank
