#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "subplanck/error.hpp"
#include "subplanck/figures.hpp"
#include "subplanck/loci.hpp"

namespace subplanck {
namespace {

LocusConfig small(PairLabel label, std::vector<int> ns) {
  LocusConfig c = LocusConfig::defaults(label);
  c.n_values = std::move(ns);
  c.r = {0.2, 0.6, 0.2};
  c.alpha = {0.5, 2.0, 0.5};
  return c;
}

// First root per (n, r, alpha) cell.
std::map<std::tuple<int, double, double>, double> first_roots(const LocusResult& res) {
  std::map<std::tuple<int, double, double>, double> out;
  for (const auto& p : res.points) out.try_emplace({p.n, p.r, p.alpha}, p.beta);
  return out;
}

TEST(Range, InclusiveValues) {
  const Range r{0.1, 0.5, 0.1};
  const auto v = r.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_NEAR(v.back(), 0.5, 1e-15);
  EXPECT_THROW((Range{0.0, 1.0, 0.0}.validate("r")), Error);
}

TEST(Locus, ResidualBoundHolds) {
  for (auto label : {PairLabel::trgtrgn1, PairLabel::trgtrgp2, PairLabel::trgtrgE3, PairLabel::prstrg2}) {
    const LocusResult res = solve_equal_qfi(small(label, {1, 2}));
    ASSERT_FALSE(res.points.empty()) << to_string(label);
    for (const auto& p : res.points) {
      EXPECT_LE(std::abs(p.fq - p.fq_target), 1e-8 * std::max(1.0, p.fq)) << to_string(label);
      EXPECT_LE(p.residual, 1e-8 * std::max(1.0, p.fq));
    }
  }
}

TEST(Locus, TargetTargetPairsEnhanceAmplitude) {
  for (auto label : {PairLabel::trgtrgn1, PairLabel::trgtrgp2, PairLabel::trgtrgE3}) {
    LocusConfig c = small(label, {0, 1, 2, 3});
    c.alpha = {0.5, 2.0, 0.25};
    const auto roots = first_roots(solve_equal_qfi(c));
    for (double a : c.alpha.values()) {
      double prev = 0.0;
      for (int n = 0; n <= 3; ++n) {
        const auto it = roots.find({n, 0.0, a});
        ASSERT_NE(it, roots.end()) << to_string(label) << " n=" << n << " alpha=" << a;
        if (n == 0) {
          EXPECT_NEAR(it->second, a, 1e-6);  // no photons added: the states coincide
        } else {
          EXPECT_GT(it->second, a) << to_string(label) << " n=" << n << " alpha=" << a;
          EXPECT_GT(it->second, prev) << to_string(label) << " n=" << n << " alpha=" << a;
        }
        prev = it->second;
      }
    }
  }
}

TEST(Locus, SqueezedSuperpositionAmplitudeGrowsWithPhotons) {
  LocusConfig c = LocusConfig::defaults(PairLabel::prstrg2);
  c.n_values = {0, 1, 2, 3, 4};
  c.r = {0.5, 0.5, 0.1};
  const LocusResult res = solve_equal_qfi(c);
  double prev = 0.0;
  for (int n = 0; n <= 4; ++n) {
    double largest = 0.0;
    for (const auto& p : res.points) {
      if (p.n == n) largest = std::max(largest, p.beta);
    }
    EXPECT_GT(largest, prev) << "n=" << n;
    prev = largest;
  }
}

TEST(Locus, DegenerateCornerShrinksAmplitude) {
  LocusConfig c = LocusConfig::defaults(PairLabel::prstrg3);
  c.n_values = {0};
  c.r = {0.01, 0.05, 0.04};
  const auto roots = first_roots(solve_equal_qfi(c));
  const auto rs = c.r.values();
  const double b_small = roots.at({0, rs.front(), 0.0});
  const double b_large = roots.at({0, rs.back(), 0.0});
  EXPECT_LT(b_small, b_large);
  EXPECT_LT(b_small, 0.2);
}

TEST(Locus, ConventionDoesNotMoveRoots) {
  LocusConfig a = small(PairLabel::prstrg1, {1, 2});
  a.r = {0.1, 0.3, 0.2};
  a.alpha = {0.5, 1.5, 0.5};
  LocusConfig b = a;
  b.convention = QfiConvention::intro;
  const LocusResult ra = solve_equal_qfi(a), rb = solve_equal_qfi(b);
  ASSERT_EQ(ra.points.size(), rb.points.size());
  for (std::size_t i = 0; i < ra.points.size(); ++i) {
    EXPECT_NEAR(ra.points[i].beta, rb.points[i].beta, 1e-7);
    EXPECT_NEAR(4.0 * ra.points[i].fq, rb.points[i].fq, 1e-9 * rb.points[i].fq);
  }
}

TEST(Locus, ParityMatchesAtEveryPoint) {
  for (auto label : {PairLabel::prstrg1, PairLabel::prstrg3, PairLabel::trgtrgn1}) {
    LocusConfig c = small(label, {1, 2, 3});
    const LocusResult res = solve_equal_qfi(c);
    for (const auto& p : res.points) {
      const ResolvedPair pair = resolve_locus_pair(c, p.n, p.r, p.alpha, p.beta);
      EXPECT_NEAR(parity_expectation(make_state(pair.proposed)), parity_expectation(make_state(pair.target)),
                  1e-8)
          << to_string(label);
    }
  }
}

TEST(Locus, ThetaPoliciesAgreeForInvariantStates) {
  LocusConfig fixed = small(PairLabel::trgtrgp2, {1, 2});
  LocusConfig avg = fixed;
  avg.theta.kind = ThetaPolicyKind::target_invariant;
  const LocusResult a = solve_equal_qfi(fixed), b = solve_equal_qfi(avg);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_NEAR(a.points[i].beta, b.points[i].beta, 1e-7);
}

TEST(Locus, SweepPolicyCoversEachAngle) {
  LocusConfig c = small(PairLabel::trgtrgE3, {1});
  c.theta.kind = ThetaPolicyKind::sweep;
  c.theta.grid = {0.0, 0.5, 1.0};
  const LocusResult res = solve_equal_qfi(c);
  std::map<double, int> per_theta;
  for (const auto& p : res.points) ++per_theta[p.theta];
  EXPECT_EQ(per_theta.size(), 3u);
}

TEST(Fidelity, DegenerateCornerApproachesOne) {
  for (auto label : {PairLabel::prstrg1, PairLabel::prstrg2}) {
    LocusConfig c = LocusConfig::defaults(label);
    c.n_values = {0};
    c.r = {0.02, 0.02, 0.1};
    c.alpha = {0.1, 0.1, 0.1};
    LocusResult res = solve_equal_qfi(c);
    fidelity_sweep(c, res.points);
    ASSERT_FALSE(res.points.empty());
    double best = 0.0;
    for (const auto& p : res.points) best = std::max(best, p.fidelity);
    EXPECT_GT(best, 0.999) << to_string(label);
  }
}

TEST(Fidelity, SweepFillsEveryPoint) {
  LocusConfig c = small(PairLabel::prstrg2, {1, 3});
  LocusResult res = solve_equal_qfi(c);
  fidelity_sweep(c, res.points);
  for (const auto& p : res.points) {
    EXPECT_TRUE(p.swept);
    EXPECT_FALSE(p.flagged);
    EXPECT_GE(p.fidelity, 0.0);
    EXPECT_LE(p.fidelity, 1.0 + 1e-12);
    EXPECT_GE(p.cutoff, kMinLadderCutoff);
  }
}

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  LocusConfig c = small(PairLabel::prstrg1, {1, 2});
  LocusResult a = solve_equal_qfi(c), b = solve_equal_qfi(c);
  fidelity_sweep(c, a.points);
  fidelity_sweep(c, b.points);
  EXPECT_EQ(locus_csv(a.points), locus_csv(b.points));
}

TEST(Validation, BadConfigs) {
  LocusConfig c = LocusConfig::defaults(PairLabel::prstrg2);
  c.beta_min = 0.0;
  EXPECT_THROW(solve_equal_qfi(c), Error);
  LocusConfig d = LocusConfig::defaults(PairLabel::prstrg2);
  d.n_values.clear();
  EXPECT_THROW(d.validate(), Error);
  LocusConfig e = LocusConfig::defaults(PairLabel::prstrg2);
  e.beta_phase = 2.0;
  EXPECT_THROW(e.validate(), Error);
}

}  // namespace
}  // namespace subplanck
