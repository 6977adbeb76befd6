#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "subplanck/error.hpp"
#include "subplanck/metrics.hpp"
#include "subplanck/state.hpp"

namespace subplanck {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<StateSpec> state_zoo() {
  return {StateSpec::coherent(Complex(1.0, 0.4)), StateSpec::squeezed(0.5),
          StateSpec::cat(1.5, 0),                 StateSpec::cat(1.2, 1),
          StateSpec::ks_plus(1.3, 1),             StateSpec::ks_minus(1.1, 0),
          StateSpec::ss(0.4),                     StateSpec::ssd(0.3, 1.0)};
}

TEST(Qfi, CoherentAnchor) {
  for (Complex a : {Complex(0.0), Complex(1.0), Complex(-0.7, 1.3)}) {
    const FockVector psi = make_state(StateSpec::coherent(a));
    for (double t : {0.0, 0.6, kPi / 2, 2.5}) {
      EXPECT_NEAR(qfi_displacement(psi, t, QfiConvention::intro), 4.0, 1e-8);
      EXPECT_NEAR(qfi_displacement(psi, t, QfiConvention::appendix), 1.0, 1e-8);
    }
  }
}

TEST(Qfi, SqueezedVacuumQuadratures) {
  // exact values: tighten the tail well below the comparison tolerance
  const FockVector psi = make_state(StateSpec::squeezed(0.5), 1e-15);
  EXPECT_NEAR(qfi_displacement(psi, kPi / 2, QfiConvention::intro), 4.0 * std::exp(1.0), 1e-10);
  EXPECT_NEAR(qfi_displacement(psi, 0.0, QfiConvention::intro), 4.0 * std::exp(-1.0), 1e-10);
}

TEST(Qfi, DisplacementCovariance) {
  for (const auto& spec : state_zoo()) {
    const FockVector psi = make_state(spec);
    const FockVector shifted = make_state(spec).resized(psi.cutoff() + 48);
    const FockVector moved = displace(shifted, Complex(0.9, -0.5));
    ASSERT_FALSE(moved.flagged());
    for (double t : {0.0, 1.1}) {
      EXPECT_NEAR(qfi_displacement(moved, t), qfi_displacement(psi, t), 1e-8) << to_string(spec.family);
    }
  }
}

TEST(Qfi, CompassPlusIsThetaIndependent) {
  for (int l = 0; l < 4; ++l) {
    const FockVector psi = make_state(StateSpec::ks_plus(1.5, l).with_added(l % 2));
    const double ref = qfi_displacement(psi, 0.0);
    for (int k = 1; k < 16; ++k) {
      EXPECT_NEAR(qfi_displacement(psi, 2 * kPi * k / 16), ref, 1e-8 * ref) << "l=" << l;
    }
  }
}

TEST(Qfi, CatAndCompassMinusDependOnTheta) {
  for (const StateSpec& spec : {StateSpec::cat(1.5, 0), StateSpec::ks_minus(1.5, 0)}) {
    const FockVector psi = make_state(spec);
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double f = qfi_displacement(psi, 2 * kPi * k / 16);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    EXPECT_GT((hi - lo) / hi, 1e-3) << to_string(spec.family);
  }
}

TEST(Qfi, FlaggedStatesAreRefused) {
  const FockVector psi = build_state(StateSpec::coherent(2.8), 32);
  ASSERT_TRUE(psi.flagged());
  try {
    qfi_displacement(psi, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::truncation);
  }
}

TEST(Fidelity, Examples) {
  const FockVector psi = make_state(StateSpec::ks_plus(1.1, 2));
  EXPECT_NEAR(fidelity(psi, psi), 1.0, 1e-15);
  const FockVector even = build_state(StateSpec::cat(1.4, 0), 40);
  const FockVector odd = build_state(StateSpec::cat(1.4, 1), 40);
  EXPECT_NEAR(fidelity(even, odd), 0.0, 1e-30);
  const FockVector ssd = build_state(StateSpec::ssd(0.0, 1.0), 32);
  const FockVector cat = build_state(StateSpec::cat(1.0, 0), 32);
  EXPECT_GE(fidelity(ssd, cat), 1.0 - 1e-10);
  EXPECT_THROW(fidelity(even, build_state(StateSpec::cat(1.4, 0), 32)), Error);
}

TEST(Fidelity, PhotonSubtractionPreservesCatAmplitude) {
  for (double b : {1.0, 1.5, 2.0}) {
    const FockVector cat = make_state(StateSpec::cat(b, 0));
    EXPECT_NEAR(fidelity(normalize(lower(cat, 2)), cat), 1.0, 1e-8);
  }
}

TEST(PhotonStats, Examples) {
  const auto vac = mean_photon(make_state(StateSpec::coherent(0.0)));
  EXPECT_NEAR(vac.mean, 0.0, 1e-15);
  EXPECT_NEAR(vac.variance, 0.0, 1e-15);
  const auto coh = mean_photon(make_state(StateSpec::coherent(1.0), 1e-15));
  EXPECT_NEAR(coh.mean, 1.0, 1e-13);
  EXPECT_NEAR(coh.variance, 1.0, 1e-13);
  const double s2 = std::pow(std::sinh(0.5), 2);
  const auto sq = mean_photon(make_state(StateSpec::squeezed(0.5), 1e-15));
  EXPECT_NEAR(sq.mean, s2, 1e-13);
  EXPECT_NEAR(sq.variance, 2.0 * s2 * (s2 + 1.0), 1e-12);
}

TEST(PhotonStats, MeanIncreasesWithAmplitude) {
  for (const auto family : {Family::cat, Family::ks_plus, Family::ks_minus}) {
    double prev = -1.0;
    for (int k = 1; k <= 15; ++k) {
      StateSpec s = StateSpec::cat(0.2 * k, 0);
      s.family = family;
      const double m = mean_photon(make_state(s)).mean;
      EXPECT_GT(m, prev) << to_string(family) << " beta=" << 0.2 * k;
      prev = m;
    }
  }
}

TEST(Energy, Examples) {
  EXPECT_NEAR(predicted_pa_ps_energy(1.0, 1.0, PhotonOp::add), 2.5, 1e-15);
  EXPECT_NEAR(predicted_pa_ps_energy(1.0, 1.0, PhotonOp::subtract), 1.0, 1e-15);
  EXPECT_NEAR(predicted_pa_ps_energy(3.0, 0.0, PhotonOp::add), 4.0, 1e-15);
  const FockVector coh = make_state(StateSpec::coherent(1.0));
  EXPECT_NEAR(measured_pa_ps_energy(coh, PhotonOp::add), 2.5, 1e-12);
  EXPECT_NEAR(measured_pa_ps_energy(coh, PhotonOp::subtract), 1.0, 1e-12);
  EXPECT_THROW(predicted_pa_ps_energy(0.0, 0.0, PhotonOp::subtract), Error);
}

TEST(Energy, PredictionMatchesMeasurementAcrossZoo) {
  for (const auto& spec : state_zoo()) {
    const FockVector psi = make_state(spec);
    const auto stats = mean_photon(psi);
    for (auto op : {PhotonOp::add, PhotonOp::subtract}) {
      if (op == PhotonOp::subtract && stats.mean == 0.0) continue;
      const double predicted = predicted_pa_ps_energy(stats.mean, stats.variance, op);
      const double measured = measured_pa_ps_energy(psi, op);
      EXPECT_NEAR(measured, predicted, 1e-8 * std::max(1.0, predicted)) << to_string(spec.family);
    }
  }
}

TEST(Limits, FirstOrderDifferences) {
  EXPECT_GE(small_param_limit_check(LimitKind::squeeze_diff, 1, 1e-3), 1.0 - 1e-5);
  EXPECT_GE(small_param_limit_check(LimitKind::displace_diff, 1, 1e-3), 1.0 - 1e-5);
}

TEST(Limits, SecondOrderDifferencesKeepVacuumAdmixture) {
  // (D[a] - D[-a])^2 |0> -> 4 a^2 (a^dag - a)^2 |0> = 4 a^2 (sqrt2 |2> - |0>): fidelity 2/3.
  EXPECT_NEAR(small_param_limit_check(LimitKind::displace_diff, 2, 1e-3), 2.0 / 3.0, 1e-5);
  // (S[r] - S[-r])^2 |0> -> r^2 (a^2 - a^dag^2)^2 |0> = r^2 (sqrt24 |4> - 2 |0>): fidelity 6/7.
  EXPECT_NEAR(small_param_limit_check(LimitKind::squeeze_diff, 2, 1e-3), 6.0 / 7.0, 1e-5);
}

TEST(Report, CarriesConventionAndBothScales) {
  const FockVector psi = make_state(StateSpec::coherent(0.0));
  const MetricReport rep = make_report(psi, 0.3, QfiConvention::intro);
  EXPECT_EQ(rep.convention, QfiConvention::intro);
  EXPECT_NEAR(rep.qfi, 4.0, 1e-12);
  EXPECT_NEAR(rep.qfi_var_g, 1.0, 1e-12);
  EXPECT_NEAR(rep.parity, 1.0, 1e-15);
}

}  // namespace
}  // namespace subplanck
