#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "edmrank/nested.hpp"
#include "edmrank/nmf.hpp"
#include "edmrank/polygeom.hpp"

namespace edmrank {

// max(0, ceil(2*sqrt(t)) - k), with the ceiling taken in exact integer
// arithmetic as the smallest m satisfying m*m >= 4t.
inline long trdeg_ic_bound(long t, long k) {
  if (t < 0 || k < 0) throw std::invalid_argument("bounds: negative argument");
  if (t == 0) return 0;
  const mpz_class four_t = 4 * mpz_class(t);
  mpz_class m = sqrt(four_t);
  if (m * m < four_t) m += 1;
  const mpz_class out = m - k;
  return out < 0 ? 0L : static_cast<long>(out.get_si());
}

// Transcendence-degree cap d*(v-d+k) for a slice of a d-polytope with v
// vertices by a k-plane.
inline long lemma_trdeg_cap(long d, long v, long k) {
  if (d < 0 || v < 0 || k < 0) throw std::invalid_argument("bounds: negative argument");
  return d * (v - d + k);
}

// The planar specialization: a lower bound of ceil(2*sqrt(n)) - 2 vertices,
// valid only under algebraic independence of the generating points, which no
// rational instance can certify. Callers must label results conditional.
inline long theorem1_bound(long n) {
  if (n < 3) throw std::invalid_argument("bounds: need at least three points");
  return trdeg_ic_bound(n, 2);
}

struct RankBracket {
  std::size_t n;
  long lower;
  std::string lower_provenance;
  long upper;
  std::string upper_provenance;
  // Reported alongside, never folded into `lower`: it presumes algebraic
  // independence that rational inputs cannot have.
  long conditional_lower;
  NestedCertificate certificate;
  std::optional<std::size_t> search_terms;
  std::optional<double> search_residual;
};

// Bracket the nonnegative rank of the stochastic form: the matrix rank gives
// the unconditional floor, the restricted nested solution gives a
// constructive ceiling, and an approximate descent result is attached as
// evidence without tightening the exact ceiling.
inline RankBracket bracket_rank_plus(const EdmInstance& inst, std::size_t seeds = 8,
                                     std::size_t iters = 500, double tol = 1e-9,
                                     std::uint64_t seed = 0) {
  const std::size_t n = inst.alpha.n();
  const AffineChart chart = AffineChart::for_instance(inst);
  const OuterPolygon op = outer_polygon(inst, chart);
  const InnerPoints ip = inner_points(inst, chart);
  const NestedInstance ni = NestedInstance::make(ip.points, op.polygon);
  NestedCertificate cert = min_nested_polygon(ni);

  RankBracket out{n,
                  3,
                  "matrix rank of the distance matrix is exactly 3",
                  static_cast<long>(cert.k),
                  "restricted nested polygon certificate with " + std::to_string(cert.k) +
                      " vertices (trivial bound " + std::to_string(n) + ")",
                  theorem1_bound(static_cast<long>(n)),
                  std::move(cert),
                  std::nullopt,
                  std::nullopt};

  if (seeds > 0) {
    DMatrix target(out.n, out.n);
    for (std::size_t i = 0; i < out.n; ++i)
      for (std::size_t j = 0; j < out.n; ++j)
        target(i, j) = inst.stoch.Dprime(i, j).to_double();
    if (const auto found =
            nmf_search(target, static_cast<std::size_t>(out.upper), seeds, iters, tol, seed)) {
      out.search_terms = found->terms();
      out.search_residual = found->residual;
    }
  }

  if (out.lower > out.upper) throw std::logic_error("bounds: bracket inverted");
  return out;
}

}  // namespace edmrank
