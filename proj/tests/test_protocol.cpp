#include "edmrank/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "edmrank/edm.hpp"
#include "edmrank/nmf.hpp"
#include "edmrank/polygeom.hpp"

namespace edmrank {
namespace {

QMatrix q(const std::vector<std::vector<long>>& rows) {
  QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Rational(rows[i][j]);
  return m;
}

// The factorization D = D' * diag(d) that every instance carries.
Factorization stochastic_split(const EdmInstance& inst) {
  const std::size_t n = inst.alpha.n();
  QMatrix diag(n, n);
  for (std::size_t j = 0; j < n; ++j) diag(j, j) = inst.stoch.d[j];
  return Factorization::exact_pair(inst.stoch.Dprime, diag);
}

TEST(Protocol, BitsCountMessages) {
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(3), 2u);
  EXPECT_EQ(ceil_log2(4), 2u);
  EXPECT_EQ(ceil_log2(5), 3u);
  EXPECT_EQ(ceil_log2(1024), 10u);
}

TEST(Protocol, IdentitySenderIsDeterministic) {
  const QMatrix c = q({{4, 0, 7}, {1, 2, 3}, {0, 5, 9}});
  const auto p = protocol_from_factorization(Factorization::exact_pair(QMatrix::identity(3), c));
  EXPECT_EQ(p.bits, 2u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 3; ++k)
      EXPECT_EQ(p.dist[i][k], Rational(i == k ? 1 : 0));
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(exact_expectation(p, i, j), c(i, j));
      const auto sim = simulate(p, i, j, 50, 123);
      EXPECT_DOUBLE_EQ(sim.empirical, c(i, j).to_double());
      EXPECT_DOUBLE_EQ(sim.stderr_est, 0.0);
    }
  }
}

TEST(Protocol, SingleMessageCostsZeroBits) {
  const auto p = protocol_from_factorization(Factorization::exact_pair(q({{1}, {2}}), q({{3, 5}})));
  EXPECT_EQ(p.bits, 0u);
  EXPECT_EQ(exact_expectation(p, 1, 0), Rational(6));
  EXPECT_EQ(simulate(p, 1, 1, 10, 0).empirical, 10.0);
}

TEST(Protocol, ExpectationReproducesTheDistanceMatrixExactly) {
  const auto inst = EdmInstance::from_alpha(random_alpha(5, 21));
  const auto p = protocol_from_factorization(stochastic_split(inst));
  EXPECT_EQ(p.bits, 3u);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      EXPECT_EQ(exact_expectation(p, i, j), inst.edm.D(i, j)) << i << "," << j;
}

TEST(Protocol, RankThreeTargetNeedsTwoBitsViaItsStochasticForm) {
  const auto inst =
      EdmInstance::from_alpha(AlphaVector({Rational(0), Rational(1), Rational(2)}));
  const auto p = protocol_from_factorization(stochastic_split(inst));
  EXPECT_EQ(p.messages(), 3u);
  EXPECT_EQ(p.bits, 2u);
}

TEST(Protocol, WorkedCellSimulatesWithinThreeStandardErrors) {
  const auto inst =
      EdmInstance::from_alpha(AlphaVector({Rational(0), Rational(1), Rational(2)}));
  const auto p = protocol_from_factorization(stochastic_split(inst));
  const auto sim = simulate(p, 0, 2, 20000, 42);
  EXPECT_EQ(sim.exact, Rational(4));
  EXPECT_GT(sim.stderr_est, 0.0);
  EXPECT_LE(std::abs(sim.empirical - 4.0), 3.0 * sim.stderr_est);
  EXPECT_EQ(sim.bits, 2u);
}

TEST(Protocol, SimulationIsDeterministicPerSeed) {
  const auto inst = EdmInstance::from_alpha(random_alpha(4, 9));
  const auto p = protocol_from_factorization(stochastic_split(inst));
  const auto a = simulate(p, 1, 3, 5000, 77);
  const auto b = simulate(p, 1, 3, 5000, 77);
  EXPECT_EQ(a.empirical, b.empirical);
  EXPECT_EQ(a.stderr_est, b.stderr_est);
  const auto c = simulate(p, 1, 3, 5000, 78);
  EXPECT_NE(a.empirical, c.empirical);
}

TEST(Protocol, ZeroRowsSendNothingAndAnswerZero) {
  const auto p = protocol_from_factorization(
      Factorization::exact_pair(q({{2, 1}, {0, 0}, {1, 1}}), q({{1, 4}, {3, 0}})));
  EXPECT_TRUE(p.row_sums[1].is_zero());
  EXPECT_EQ(p.dist[1][0], Rational(0));
  EXPECT_EQ(p.dist[1][1], Rational(0));
  EXPECT_EQ(exact_expectation(p, 1, 0), Rational(0));
  const auto sim = simulate(p, 1, 1, 100, 5);
  EXPECT_EQ(sim.empirical, 0.0);
  EXPECT_EQ(sim.stderr_est, 0.0);
}

TEST(Protocol, RejectsApproximateAndMalformedInput) {
  Factorization fa = Factorization::approx_pair(DMatrix(2, 2), DMatrix(2, 2), 0.0);
  EXPECT_THROW(protocol_from_factorization(fa), std::invalid_argument);

  Factorization fb = Factorization::exact_pair(q({{1, 2}}), q({{1}, {1}}));
  fb.B(0, 0) = Rational(-1);
  EXPECT_THROW(protocol_from_factorization(fb), std::invalid_argument);
  fb.B(0, 0) = Rational(1);
  fb.C(1, 0) = Rational(-2, 3);
  EXPECT_THROW(protocol_from_factorization(fb), std::invalid_argument);

  const auto p = protocol_from_factorization(Factorization::exact_pair(q({{1}}), q({{1}})));
  EXPECT_THROW(exact_expectation(p, 1, 0), std::invalid_argument);
  EXPECT_THROW(simulate(p, 0, 1, 10, 0), std::invalid_argument);
  EXPECT_THROW(simulate(p, 0, 0, 0, 0), std::invalid_argument);
}

TEST(Protocol, QuantumSizeIsOneQubitWithCheckedCertificate) {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const AlphaVector a = random_alpha(6, seed);
    const EDM e = build_edm(a);
    const QuantumSize qs = quantum_size(e, a);
    EXPECT_EQ(qs.qubits, 1u);
    EXPECT_EQ(qs.certificate.B.size(), 6u);
  }

  const AlphaVector a = AlphaVector({Rational(0), Rational(1), Rational(2)});
  EDM tampered = build_edm(a);
  tampered.D(0, 1) = Rational(7);
  EXPECT_THROW(quantum_size(tampered, a), std::logic_error);
}

}  // namespace
}  // namespace edmrank
