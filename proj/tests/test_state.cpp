#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "subplanck/error.hpp"
#include "subplanck/metrics.hpp"
#include "subplanck/state.hpp"

namespace subplanck {
namespace {

// e^{-|b|^2/2} b^n / sqrt(n!)
Complex coherent_amplitude(Complex b, int n) {
  return std::exp(-std::norm(b) / 2.0) * std::pow(b, n) / std::sqrt(std::tgamma(n + 1.0));
}

// Compared on the trusted block only: lowering drops the top levels of the
// truncated space, which costs more than the tail tolerance.
double residual_norm(const FockVector& lhs, Complex scale, const FockVector& psi) {
  const int block = static_cast<int>(kTrustedBlockFraction * psi.cutoff());
  return (lhs.resized(block) - scale * psi.resized(block)).norm();
}

TEST(Families, SsdWithoutSqueezingIsEvenCat) {
  const FockVector a = build_state(StateSpec::ssd(0.0, 1.0), 32);
  const FockVector b = build_state(StateSpec::cat(1.0, 0), 32);
  EXPECT_LT((a - b).norm(), 1e-15);
}

TEST(Families, CompassPlusSupportAgainstDirectSum) {
  const Complex beta = 1.2;
  const FockVector psi = build_state(StateSpec::ks_plus(beta, 0), 32);
  EXPECT_LT(std::abs(psi[3]), 1e-16);
  // sum_k |i^k beta>, normalised, built from coherent amplitudes directly
  std::vector<Complex> direct(33);
  for (int n = 0; n <= 32; ++n) {
    for (int k = 0; k < 4; ++k) direct[n] += coherent_amplitude(std::pow(Complex(0, 1), k) * beta, n);
  }
  const FockVector expected = normalize(FockVector(direct));
  EXPECT_LT((psi - expected).norm(), 1e-14);
}

TEST(Families, EvenCatMeanPhotonNumber) {
  const FockVector psi = make_state(StateSpec::cat(1.0, 0));
  EXPECT_NEAR(mean_photon(psi).mean, std::tanh(1.0), 1e-13);
}

TEST(Families, CompassCoefficientsMatchClosedForm) {
  for (int k1 = 0; k1 < 4; ++k1) {
    for (int k0 = 0; k0 < 2; ++k0) {
      EXPECT_NEAR(FbarTable::at(k1, k0), fbar_closed_form(k1, k0), 1e-15) << k1 << "," << k0;
    }
  }
}

TEST(Families, SupportPattern) {
  for (int l = 0; l < 4; ++l) {
    const FockVector psi = make_state(StateSpec::ks_plus(1.4, l));
    for (int n = 0; n <= psi.cutoff(); ++n) {
      if (n % 4 != l) {
        EXPECT_LT(std::abs(psi[n]), 1e-15) << "l=" << l << " n=" << n;
      }
    }
  }
  for (int l = 0; l < 2; ++l) {
    const FockVector psi = make_state(StateSpec::cat(1.4, l));
    for (int n = 0; n <= psi.cutoff(); ++n) {
      if (n % 2 != l) {
        EXPECT_LT(std::abs(psi[n]), 1e-15) << "l=" << l << " n=" << n;
      }
    }
  }
}

TEST(Families, CompassPlusBasisIsOrthogonal) {
  const Complex beta(1.1, 0.3);
  for (int l = 0; l < 4; ++l) {
    for (int m = l + 1; m < 4; ++m) {
      const FockVector a = build_state(StateSpec::ks_plus(beta, l), 48);
      const FockVector b = build_state(StateSpec::ks_plus(beta, m), 48);
      EXPECT_LT(std::abs(inner(a, b)), 1e-10) << l << " vs " << m;
    }
  }
}

TEST(Families, EigenstateIdentities) {
  for (double b : {1.0, 1.5, 2.0}) {
    for (int l = 0; l < 2; ++l) {
      const FockVector cat = make_state(StateSpec::cat(b, l));
      EXPECT_LT(residual_norm(lower(cat, 2), b * b, cat) / (b * b), 1e-8) << "cat b=" << b;
    }
    for (int l = 0; l < 4; ++l) {
      const FockVector ks = make_state(StateSpec::ks_plus(b, l));
      EXPECT_LT(residual_norm(lower(ks, 4), std::pow(b, 4), ks) / std::pow(b, 4), 1e-8);
    }
    for (int l = 0; l < 2; ++l) {
      const FockVector ks = make_state(StateSpec::ks_minus(b, l));
      EXPECT_LT(residual_norm(lower(ks, 4), std::pow(b, 4), ks) / std::pow(b, 4), 1e-8);
    }
  }
}

TEST(Families, PhotonSubtractionLeavesCoherentStateUnchanged) {
  const Complex a(0.8, -0.6);
  const FockVector psi = make_state(StateSpec::coherent(a).with_subtracted(2));
  const FockVector ref = build_state(StateSpec::coherent(a), psi.cutoff());
  EXPECT_NEAR(std::abs(inner(psi, ref)), 1.0, 1e-13);
}

TEST(Parity, DefiniteParityFamilies) {
  EXPECT_NEAR(parity_expectation(make_state(StateSpec::cat(1.5, 0))), 1.0, 1e-13);
  EXPECT_NEAR(parity_expectation(make_state(StateSpec::cat(1.5, 1))), -1.0, 1e-13);
  EXPECT_NEAR(parity_expectation(make_state(StateSpec::coherent(1.0))), std::exp(-2.0), 1e-13);
  // KS(-) of label l occupies the levels of parity l + 1
  EXPECT_NEAR(parity_expectation(make_state(StateSpec::ks_minus(1.3, 0))), -1.0, 1e-13);
  EXPECT_NEAR(parity_expectation(make_state(StateSpec::ks_minus(1.3, 1))), 1.0, 1e-13);
}

TEST(Parity, PhotonAdditionFlipsParity) {
  const std::vector<StateSpec> zoo{StateSpec::cat(1.5, 0),        StateSpec::cat(1.2, 1),
                                   StateSpec::ks_plus(1.2, 2),    StateSpec::ks_minus(1.1, 1),
                                   StateSpec::squeezed(0.5),      StateSpec::ss(0.4),
                                   StateSpec::ssd(0.3, Complex(1.0, 0.5))};
  for (const auto& spec : zoo) {
    const double p0 = parity_expectation(make_state(spec));
    ASSERT_NEAR(std::abs(p0), 1.0, 1e-12) << to_string(spec.family);
    for (int n = 1; n <= 3; ++n) {
      const double pn = parity_expectation(make_state(spec.with_added(n)));
      EXPECT_NEAR(pn, p0 * (n % 2 == 0 ? 1.0 : -1.0), 1e-12) << to_string(spec.family) << " n=" << n;
    }
  }
}

TEST(Validation, RejectsBadSpecs) {
  EXPECT_THROW(StateSpec::ks_plus(1.2, 5).validate(), Error);
  EXPECT_THROW(StateSpec::cat(1.2, 2).validate(), Error);
  EXPECT_THROW(StateSpec::squeezed(-0.1).validate(), Error);
  EXPECT_THROW(StateSpec::cat(1.0, 0).with_added(-1).validate(), Error);
  EXPECT_THROW(build_state(StateSpec::cat(0.0, 1), 32), Error);  // odd cat of zero amplitude vanishes
}

TEST(Pairs, TargetLabels) {
  EXPECT_EQ((PairSpec{PairLabel::prstrg1, 1, 0}.target_l()), 0);
  EXPECT_EQ((PairSpec{PairLabel::prstrg1, 2, 0}.target_l()), 1);
  EXPECT_EQ((PairSpec{PairLabel::prstrg2, 6, 0}.target_l()), 2);
  EXPECT_EQ((PairSpec{PairLabel::prstrg3, 3, 0}.target_l()), 1);
  EXPECT_EQ((PairSpec{PairLabel::trgtrgE3, 2, 0}.target_l()), 0);
  EXPECT_EQ((PairSpec{PairLabel::trgtrgp2, 3, 2}.target_l()), 1);
}

TEST(Pairs, ResolutionMatchesParity) {
  const ResolvedPair p = resolve_pair({PairLabel::trgtrgE3, 2, 0}, {0.0, 1.0, 1.7, 1.0});
  EXPECT_EQ(p.proposed.family, Family::cat);
  EXPECT_EQ(p.proposed.n_add, 2);
  EXPECT_EQ(p.target.l, 0);
  EXPECT_NEAR(parity_expectation(make_state(p.proposed)), 1.0, 1e-12);
  EXPECT_NEAR(parity_expectation(make_state(p.target)), 1.0, 1e-12);

  const ResolvedPair q = resolve_pair({PairLabel::prstrg2, 0, 0}, {0.4, 0.0, 1.0, 1.0});
  EXPECT_EQ(q.proposed.family, Family::ss);
  EXPECT_EQ(q.target.family, Family::ks_plus);
  EXPECT_EQ(q.target.l, 0);

  for (int n = 0; n <= 4; ++n) {
    const ResolvedPair r = resolve_pair({PairLabel::prstrg1, n, 0},
                                        {0.3, 0.9, 1.2, default_beta_phase(PairLabel::prstrg1)});
    EXPECT_NEAR(parity_expectation(make_state(r.proposed)), parity_expectation(make_state(r.target)),
                1e-10)
        << "n=" << n;
  }
}

TEST(Pairs, DefaultPhases) {
  const Complex quarter = std::polar(1.0, std::numbers::pi / 4.0);
  EXPECT_NEAR(std::abs(default_beta_phase(PairLabel::trgtrgn1) - quarter), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(default_beta_phase(PairLabel::prstrg1) - quarter), 0.0, 1e-15);
  EXPECT_EQ(default_beta_phase(PairLabel::trgtrgE3), Complex(1.0));
}

}  // namespace
}  // namespace subplanck
