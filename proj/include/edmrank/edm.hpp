#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "edmrank/matrix.hpp"
#include "edmrank/rational.hpp"

namespace edmrank {

// Generator of a squared-difference distance matrix: n >= 3 pairwise distinct
// rationals, stored increasing. Out-of-order input is sorted (a permutation of
// the generator permutes D by the same pattern and changes no rank quantity);
// the applied permutation is kept for reporting.
class AlphaVector {
 public:
  explicit AlphaVector(std::vector<Rational> entries) {
    if (entries.size() < 3) throw std::invalid_argument("alpha: need at least 3 entries");
    permutation_.resize(entries.size());
    std::iota(permutation_.begin(), permutation_.end(), std::size_t{0});
    std::sort(permutation_.begin(), permutation_.end(),
              [&](std::size_t a, std::size_t b) { return entries[a] < entries[b]; });
    entries_.reserve(entries.size());
    for (const std::size_t i : permutation_) entries_.push_back(entries[i]);
    for (std::size_t i = 1; i < entries_.size(); ++i)
      if (entries_[i - 1] == entries_[i])
        throw std::invalid_argument("alpha: entries must be pairwise distinct");
  }

  std::size_t n() const { return entries_.size(); }
  const std::vector<Rational>& entries() const { return entries_; }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }

  // permutation()[i] is the position in the constructor input of the i-th
  // (sorted) entry; identity when the input was already increasing.
  const std::vector<std::size_t>& permutation() const { return permutation_; }

  AlphaVector translated(const Rational& c) const {
    std::vector<Rational> e = entries_;
    for (Rational& v : e) v += c;
    AlphaVector a(std::move(e));
    a.permutation_ = permutation_;
    return a;
  }

  // Shifts so the smallest entry is 1; identity when already all positive.
  // Division by entries is then always safe downstream.
  AlphaVector positivized() const {
    if (entries_.front() > Rational(0)) return *this;
    return translated(Rational(1) - entries_.front());
  }

 private:
  std::vector<Rational> entries_;
  std::vector<std::size_t> permutation_;
};

// n distinct rationals with numerator and denominator bounded by denom_bound,
// deterministic per seed.
inline AlphaVector random_alpha(std::size_t n, std::uint64_t seed, long denom_bound = 50) {
  if (denom_bound < 1) throw std::invalid_argument("alpha: denominator bound must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-denom_bound, denom_bound);
  std::uniform_int_distribution<long> den(1, denom_bound);
  std::set<Rational> seen;
  std::size_t attempts = 0;
  while (seen.size() < n) {
    if (++attempts > 1000 * n)
      throw std::invalid_argument("alpha: denominator bound too small for distinct entries");
    seen.insert(Rational(num(rng), den(rng)));
  }
  return AlphaVector(std::vector<Rational>(seen.begin(), seen.end()));
}

template <typename T>
Matrix<T> build_edm_matrix(const std::vector<T>& alpha) {
  const std::size_t n = alpha.size();
  Matrix<T> d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const T diff = alpha[i] - alpha[j];
      d(i, j) = diff * diff;
    }
  return d;
}

struct EDM {
  std::size_t n;
  QMatrix D;
};

inline EDM build_edm(const AlphaVector& alpha) {
  return EDM{alpha.n(), build_edm_matrix(alpha.entries())};
}

template <typename T>
struct ColumnStochastic {
  Matrix<T> Dprime;
  std::vector<T> d;  // column sums of the input; input = Dprime * diag(d)
};

template <typename T>
ColumnStochastic<T> column_stochasticize_matrix(const Matrix<T>& D) {
  const std::size_t n = D.rows();
  ColumnStochastic<T> out{Matrix<T>(n, D.cols()), std::vector<T>(D.cols(), T(0))};
  for (std::size_t j = 0; j < D.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) out.d[j] += D(i, j);
    if (out.d[j].is_zero())
      throw std::invalid_argument("stochasticize: zero column sum");
    for (std::size_t i = 0; i < n; ++i) out.Dprime(i, j) = D(i, j) / out.d[j];
  }
  return out;
}

struct StochasticEDM {
  std::size_t n;
  QMatrix Dprime;
  std::vector<Rational> d;
};

inline StochasticEDM column_stochasticize(const EDM& e) {
  auto cs = column_stochasticize_matrix(e.D);
  return StochasticEDM{e.n, std::move(cs.Dprime), std::move(cs.d)};
}

// Rank-one psd pair realizing D_ij as a trace product: B_i from the vector
// (1, alpha_i), C_j from (alpha_j, -1), so tr(B_i C_j) = (alpha_i - alpha_j)^2.
struct PsdFactorization {
  std::vector<QMatrix> B;  // n symmetric psd 2x2 matrices
  std::vector<QMatrix> C;
};

inline PsdFactorization psd_rank2_factorization(const AlphaVector& alpha) {
  PsdFactorization f;
  for (std::size_t i = 0; i < alpha.n(); ++i) {
    const Rational& a = alpha[i];
    QMatrix b(2, 2), c(2, 2);
    b(0, 0) = Rational(1);
    b(0, 1) = b(1, 0) = a;
    b(1, 1) = a * a;
    c(0, 0) = a * a;
    c(0, 1) = c(1, 0) = -a;
    c(1, 1) = Rational(1);
    f.B.push_back(std::move(b));
    f.C.push_back(std::move(c));
  }
  return f;
}

inline Rational trace_product(const QMatrix& b, const QMatrix& c) {
  const QMatrix p = b * c;
  Rational t(0);
  for (std::size_t i = 0; i < p.rows(); ++i) t += p(i, i);
  return t;
}

inline bool verify_psd_factorization(const PsdFactorization& f, const EDM& e) {
  if (f.B.size() != e.n || f.C.size() != e.n) return false;
  for (const auto* side : {&f.B, &f.C})
    for (const QMatrix& m : *side) {
      if (m(0, 1) != m(1, 0)) return false;
      if (m(0, 0) < Rational(0) || m(1, 1) < Rational(0)) return false;
      if (determinant(m) < Rational(0)) return false;
    }
  for (std::size_t i = 0; i < e.n; ++i)
    for (std::size_t j = 0; j < e.n; ++j)
      if (trace_product(f.B[i], f.C[j]) != e.D(i, j)) return false;
  return true;
}

// Exact rank of D, which is 3 for every valid generator; also checks that the
// all-ones vector, alpha, and alpha squared span the column space.
inline int classical_rank_check(const EDM& e, const AlphaVector& alpha) {
  const int r = matrix_rank(e.D);
  if (r != 3) throw std::invalid_argument("edm: rank is not 3 (degenerate generator)");
  QMatrix span(e.n, 3);
  for (std::size_t i = 0; i < e.n; ++i) {
    span(i, 0) = Rational(1);
    span(i, 1) = alpha[i];
    span(i, 2) = alpha[i] * alpha[i];
  }
  if (!columns_in_span(span, e.D))
    throw std::invalid_argument("edm: column space not spanned by 1, alpha, alpha^2");
  return r;
}

}  // namespace edmrank
