#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "edmrank/edm.hpp"
#include "edmrank/nmf.hpp"
#include "edmrank/rational.hpp"

namespace edmrank {

inline std::size_t ceil_log2(std::size_t r) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < r) ++bits;
  return bits;
}

// One-way expectation protocol extracted from an exact nonnegative
// factorization A = B*C. On input row i the sender samples a message k with
// probability B_ik / r_i (r_i the row sum of B), and the receiver holding
// column j answers r_i * C_kj. The expectation over messages is exactly A_ij.
struct ExpectationProtocol {
  QMatrix B{0, 0};
  QMatrix C{0, 0};
  std::vector<Rational> row_sums;
  std::vector<std::vector<Rational>> dist;  // dist[i][k] = B_ik / r_i
  std::size_t bits = 0;

  std::size_t rows() const { return B.rows(); }
  std::size_t cols() const { return C.cols(); }
  std::size_t messages() const { return C.rows(); }
};

inline ExpectationProtocol protocol_from_factorization(const Factorization& f) {
  if (!f.exact) throw std::invalid_argument("protocol: requires an exact factorization");
  if (f.B.cols() != f.C.rows()) throw std::invalid_argument("protocol: shape mismatch");
  for (std::size_t i = 0; i < f.B.rows(); ++i)
    for (std::size_t k = 0; k < f.B.cols(); ++k)
      if (f.B(i, k) < Rational(0)) throw std::invalid_argument("protocol: negative entry in B");
  for (std::size_t k = 0; k < f.C.rows(); ++k)
    for (std::size_t j = 0; j < f.C.cols(); ++j)
      if (f.C(k, j) < Rational(0)) throw std::invalid_argument("protocol: negative entry in C");

  ExpectationProtocol p;
  p.B = f.B;
  p.C = f.C;
  p.bits = ceil_log2(p.C.rows());
  p.row_sums.reserve(p.B.rows());
  p.dist.reserve(p.B.rows());
  for (std::size_t i = 0; i < p.B.rows(); ++i) {
    Rational r;
    for (std::size_t k = 0; k < p.B.cols(); ++k) r += p.B(i, k);
    p.row_sums.push_back(r);
    std::vector<Rational> row(p.B.cols());
    // An all-zero row of B encodes a zero row of the target; the sender
    // transmits nothing and the answer is 0 regardless of the column.
    if (!r.is_zero())
      for (std::size_t k = 0; k < p.B.cols(); ++k) row[k] = p.B(i, k) / r;
    p.dist.push_back(std::move(row));
  }
  return p;
}

inline Rational exact_expectation(const ExpectationProtocol& p, std::size_t i, std::size_t j) {
  if (i >= p.rows() || j >= p.cols()) throw std::invalid_argument("protocol: cell out of range");
  Rational acc;
  for (std::size_t k = 0; k < p.messages(); ++k)
    acc += p.dist[i][k] * p.row_sums[i] * p.C(k, j);
  return acc;
}

struct SimulationResult {
  Rational exact;
  double empirical = 0.0;
  double stderr_est = 0.0;
  std::size_t trials = 0;
  std::size_t bits = 0;
};

// Monte Carlo run of the protocol on one cell. Messages are drawn by exact
// inverse-CDF inversion: a 64-bit uniform u is compared against the rational
// cumulative weights without ever rounding them, so the sampled law is the
// rational distribution itself and reruns with one seed are bit-identical.
inline SimulationResult simulate(const ExpectationProtocol& p, std::size_t i, std::size_t j,
                                 std::size_t trials, std::uint64_t seed) {
  if (i >= p.rows() || j >= p.cols()) throw std::invalid_argument("protocol: cell out of range");
  if (trials == 0) throw std::invalid_argument("protocol: need at least one trial");

  SimulationResult out;
  out.exact = exact_expectation(p, i, j);
  out.trials = trials;
  out.bits = p.bits;

  std::vector<mpz_class> cum_num;
  std::vector<mpz_class> cum_den;
  Rational cum;
  for (std::size_t k = 0; k < p.messages(); ++k) {
    cum += p.dist[i][k];
    cum_num.push_back(cum.num());
    cum_den.push_back(cum.den());
  }

  const mpz_class two64 = mpz_class(1) << 64;
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  double sumsq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t raw = rng();
    double value = 0.0;
    if (!p.row_sums[i].is_zero()) {
      const mpz_class u(static_cast<unsigned long>(raw));
      std::size_t pick = p.messages() - 1;
      for (std::size_t k = 0; k < p.messages(); ++k) {
        // u / 2^64 < cum_k, cross-multiplied
        if (u * cum_den[k] < cum_num[k] * two64) {
          pick = k;
          break;
        }
      }
      value = (p.row_sums[i] * p.C(pick, j)).to_double();
    }
    sum += value;
    sumsq += value * value;
  }

  out.empirical = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var =
        (sumsq - sum * sum / static_cast<double>(trials)) / static_cast<double>(trials - 1);
    out.stderr_est = std::sqrt(var > 0.0 ? var : 0.0) / std::sqrt(static_cast<double>(trials));
  }
  return out;
}

struct QuantumSize {
  std::size_t qubits = 0;
  PsdFactorization certificate;
};

// Every matrix in this family admits a psd factorization by 2x2 blocks, so
// one qubit of one-way quantum communication always suffices.
inline QuantumSize quantum_size(const EDM& e, const AlphaVector& alpha) {
  QuantumSize q;
  q.certificate = psd_rank2_factorization(alpha);
  if (!verify_psd_factorization(q.certificate, e))
    throw std::logic_error("protocol: psd certificate does not reproduce the matrix");
  q.qubits = 1;
  return q;
}

}  // namespace edmrank
