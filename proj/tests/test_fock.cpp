#include <gtest/gtest.h>

#include <cmath>

#include "subplanck/error.hpp"
#include "subplanck/fock.hpp"
#include "subplanck/state.hpp"

namespace subplanck {
namespace {

// Squeezed-vacuum amplitude c_{2m} = (-tanh r)^m sqrt((2m)!) / (2^m m!) / sqrt(cosh r).
double squeezed_vacuum_amplitude(int m, double r) {
  const double log_mag = 0.5 * std::lgamma(2.0 * m + 1.0) - m * std::log(2.0) - std::lgamma(m + 1.0);
  return std::pow(-std::tanh(r), m) * std::exp(log_mag) / std::sqrt(std::cosh(r));
}

double block_deviation_from_identity(const Eigen::MatrixXcd& m, int block) {
  const Eigen::MatrixXcd sub = m.topLeftCorner(block, block);
  return (sub - Eigen::MatrixXcd::Identity(block, block)).norm();
}

int trusted_block(int cutoff) { return static_cast<int>(kTrustedBlockFraction * cutoff); }

TEST(Operators, ParityIsAlternatingDiagonal) {
  const auto p = build_operator(OperatorKind::parity(), 3).entries;
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected.diagonal() << 1.0, -1.0, 1.0, -1.0;
  EXPECT_EQ((p - expected).norm(), 0.0);
}

TEST(Operators, ZeroDisplacementIsIdentity) {
  const auto d = build_operator(OperatorKind::displace(0.0), 8).entries;
  EXPECT_LT(block_deviation_from_identity(d, 9), 1e-15);
}

TEST(Operators, SqueezedVacuumMatchesClosedForm) {
  const double r = 0.5;
  const auto s = build_operator(OperatorKind::squeeze(r), 64);
  const FockVector psi = apply(s, FockVector::vacuum(64));
  EXPECT_NEAR(psi[2].real(), -0.307719176458370, 1e-12);
  for (int m = 0; m < 20; ++m) {
    EXPECT_NEAR(psi[2 * m].real(), squeezed_vacuum_amplitude(m, r), 1e-12) << "m=" << m;
    EXPECT_NEAR(std::abs(psi[2 * m + 1]), 0.0, 1e-15);
  }
}

TEST(Operators, SparseActionAgreesWithDenseMatrix) {
  const FockVector seed = normalize(FockVector::number_state(3, 64) + FockVector::vacuum(64));
  const FockVector a = displace(seed, Complex(0.7, -0.4));
  const FockVector b = apply(build_operator(OperatorKind::displace(Complex(0.7, -0.4)), 64), seed);
  EXPECT_LT((a - b).norm(), 1e-12);
  const FockVector c = squeeze(seed, 0.6, 0.3);
  const FockVector d = apply(build_operator(OperatorKind::squeeze(0.6, 0.3), 64), seed);
  EXPECT_LT((c - d).norm(), 1e-12);
}

TEST(Ladder, CreateAnnihilateNumber) {
  const FockVector one = raise(FockVector::vacuum(8));
  EXPECT_EQ(one[1], Complex(1.0));
  EXPECT_EQ(one.norm_squared(), 1.0);
  EXPECT_EQ(lower(FockVector::vacuum(8)).norm_squared(), 0.0);
  const FockVector n3 = apply(build_operator(OperatorKind::number(), 8), FockVector::number_state(3, 8));
  EXPECT_EQ(n3[3], Complex(3.0));
  EXPECT_EQ(n3.norm_squared(), 9.0);
}

TEST(Inner, CoherentOverlaps) {
  const FockVector vac = FockVector::vacuum(32);
  EXPECT_DOUBLE_EQ(inner(vac, vac).real(), 1.0);
  const FockVector plus = displace(vac, 1.0), minus = displace(vac, -1.0);
  EXPECT_NEAR(std::abs(inner(plus, plus) - 1.0), 0.0, 1e-13);
  // <alpha|beta> = exp(-|alpha - beta|^2 / 2 + i Im(alpha* beta))
  EXPECT_NEAR(std::abs(inner(plus, minus) - std::exp(-2.0)), 0.0, 1e-13);
  const Complex a(0.3, 0.8), b(-0.5, 0.2);
  const Complex expected = std::exp(-std::norm(a - b) / 2.0 + Complex(0, std::imag(std::conj(a) * b)));
  EXPECT_NEAR(std::abs(inner(displace(vac, a), displace(vac, b)) - expected), 0.0, 1e-13);
}

TEST(Normalize, Examples) {
  const FockVector two(std::vector<Complex>{2.0, 0.0, 0.0});
  EXPECT_EQ(normalize(two)[0], Complex(1.0));
  const FockVector pair = normalize(FockVector(std::vector<Complex>{1.0, 1.0, 0.0}));
  EXPECT_NEAR(pair[0].real(), 1.0 / std::sqrt(2.0), 1e-16);
  EXPECT_NEAR(pair[1].real(), 1.0 / std::sqrt(2.0), 1e-16);
  EXPECT_THROW(normalize(FockVector(4)), Error);
}

TEST(Normalize, Idempotent) {
  const FockVector psi = displace(FockVector::vacuum(64), Complex(1.3, 0.4));
  const FockVector once = normalize(3.0 * psi);
  EXPECT_LT((normalize(once) - once).norm(), 1e-15);
}

TEST(Normalize, AddedPhotonNormMatchesMeanPlusOne) {
  // |a^dag psi|^2 = <n> + 1 for the coherent state alpha = 1
  const FockVector psi = displace(FockVector::vacuum(64), 1.0);
  EXPECT_NEAR(raise_extended(psi).norm_squared(), 2.0, 1e-12);
}

TEST(AutoCutoff, VacuumSitsOnLadderFloor) {
  EXPECT_EQ(auto_cutoff(StateSpec::coherent(0.0), 1e-10), kMinLadderCutoff);
}

TEST(AutoCutoff, ReturnedCutoffSatisfiesPredicate) {
  for (const StateSpec& spec : {StateSpec::cat(2.0, 0), StateSpec::squeezed(1.0).with_added(4)}) {
    const int n = auto_cutoff(spec, 1e-10);
    const FockVector psi = build_state(spec, n);
    EXPECT_LT(psi.tail_mass(), 1e-10);
    // guard band recomputed independently
    double tail = 0.0;
    for (int k = guard_band_begin(n); k <= n; ++k) tail += std::norm(psi[k]);
    EXPECT_NEAR(tail / psi.norm_squared(), psi.tail_mass(), 1e-25);
    EXPECT_GT(guard_band_begin(n), static_cast<int>(0.9 * n) - 1);
  }
}

TEST(AutoCutoff, CatTailMatchesPoissonPredicate) {
  const int n = auto_cutoff(StateSpec::cat(2.0, 0), 1e-10);
  // Even-cat weights: e^{-4} 4^k / k! for even k, normalised.
  double total = 0.0, tail = 0.0, term = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) term *= 4.0 / k;
    if (k % 2 == 0) {
      total += term;
      if (k >= guard_band_begin(n)) tail += term;
    }
  }
  EXPECT_LT(tail / total, 1e-10);
}

TEST(LoadGuard, RejectsOverloadedGenerators) {
  EXPECT_THROW(check_generator_load(OperatorKind::displace(3.0), 32), Error);
  EXPECT_NO_THROW(check_generator_load(OperatorKind::displace(2.0), 32));
  EXPECT_THROW(check_generator_load(OperatorKind::squeeze(2.0), 32), Error);
  try {
    displace(FockVector::vacuum(32), 5.0);
    FAIL() << "expected a truncation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::truncation);
  }
}

TEST(Invariants, UnitarityOnTrustedBlock) {
  for (double a : {0.5, 1.5, 3.0}) {
    const int n = auto_cutoff(StateSpec::coherent(a), kDefaultTailTolerance);
    const Eigen::MatrixXcd d = build_operator(OperatorKind::displace(Complex(a, -0.3 * a)), n).entries;
    EXPECT_LT(block_deviation_from_identity(d.adjoint() * d, trusted_block(n)), 1e-8) << "alpha=" << a;
    const Eigen::MatrixXcd dm = build_operator(OperatorKind::displace(Complex(-a, 0.3 * a)), n).entries;
    EXPECT_LT(block_deviation_from_identity(d * dm, trusted_block(n)), 1e-8);
  }
  for (double r : {0.3, 1.0, 1.5}) {
    const int n = auto_cutoff(StateSpec::squeezed(r), kDefaultTailTolerance);
    const Eigen::MatrixXcd s = build_operator(OperatorKind::squeeze(r), n).entries;
    EXPECT_LT(block_deviation_from_identity(s.adjoint() * s, trusted_block(n)), 1e-8) << "r=" << r;
    const Eigen::MatrixXcd sm = build_operator(OperatorKind::squeeze(-r), n).entries;
    EXPECT_LT(block_deviation_from_identity(s * sm, trusted_block(n)), 1e-8);
  }
}

TEST(Invariants, CommutatorIsIdentityBelowCutoff) {
  const int n = 40;
  const Eigen::MatrixXcd a = build_operator(OperatorKind::annihilate(), n).entries;
  const Eigen::MatrixXcd ad = build_operator(OperatorKind::create(), n).entries;
  const Eigen::MatrixXcd c = a * ad - ad * a;
  // sqrt(k)^2 rounding is the only error below the top row
  EXPECT_LT(block_deviation_from_identity(c, n), 1e-13);
  EXPECT_NE(c(n, n), Complex(1.0));
}

}  // namespace
}  // namespace subplanck
