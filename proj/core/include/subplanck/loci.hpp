#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "subplanck/metrics.hpp"
#include "subplanck/state.hpp"

namespace subplanck {

/// Inclusive arithmetic grid min, min + step, ..., up to max (within step / 1e6).
struct Range {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
  void validate(const char* name) const;
};

enum class ThetaPolicyKind { fixed, sweep, target_invariant };

std::string_view to_string(ThetaPolicyKind k) noexcept;
std::optional<ThetaPolicyKind> theta_policy_from_string(std::string_view name) noexcept;

/// fixed: both states evaluated at theta.
/// sweep: the whole locus is solved once per entry of grid.
/// target_invariant: F_Q averaged over theta (a rotation invariant, equal to
/// the constant value for theta-independent states) on both sides.
struct ThetaPolicy {
  ThetaPolicyKind kind = ThetaPolicyKind::fixed;
  double theta = 0.0;
  std::vector<double> grid;
};

/// Which proposed-state parameters a pair sweeps.
struct FreeParams {
  bool r = false;
  bool alpha = false;
};
FreeParams free_params(PairLabel label);

struct LocusConfig {
  PairSpec pair;  // pair.n is ignored; n_values drives the sweep
  std::vector<int> n_values{0, 1, 2, 3, 4};
  Range r{0.0, 1.2, 0.02};
  Range alpha{0.1, 2.5, 0.05};
  double beta_min = 1e-3;
  double beta_max = 6.0;
  int panels = 24;
  ThetaPolicy theta;
  QfiConvention convention = QfiConvention::appendix;
  Complex beta_phase{1.0, 0.0};
  double tail_tolerance = kDefaultTailTolerance;
  double relative_tolerance = 1e-8;

  /// Figure defaults for a pair: beta phase, theta = arg(beta phase), grids.
  static LocusConfig defaults(PairLabel label);
  void validate() const;
};

struct LocusPoint {
  int n = 0;
  double r = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double beta = 0.0;
  double fq = 0.0;         // proposed, active convention
  double fq_target = 0.0;  // target at the solved beta
  double residual = 0.0;
  int root_index = 0;
  int root_count = 1;
  bool multiple = false;
  int target_l = 0;
  // filled by fidelity_sweep
  bool swept = false;
  double fidelity = 0.0;
  double mean_n_proposed = 0.0;
  double mean_n_target = 0.0;
  int cutoff = 0;
  bool flagged = false;
  std::string note;
};

struct OmittedCell {
  int n = 0;
  double r = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  std::string reason;
};

struct LocusResult {
  LocusConfig config;
  std::vector<LocusPoint> points;
  std::vector<OmittedCell> omitted;
  /// (n, theta) combinations whose target F_Q was not monotone over the bracket.
  int nonmonotone_targets = 0;
};

/// F_Q of a state under the config's theta policy for one theta value.
double policy_qfi(const FockVector& psi, const LocusConfig& cfg, double theta);

/// Builds the pair for given free parameters.
ResolvedPair resolve_locus_pair(const LocusConfig& cfg, int n, double r, double alpha,
                                double beta);

/// For every n and every grid cell of the proposed parameters, every |beta| in
/// [beta_min, beta_max] with F_Q(target(|beta|)) = F_Q(proposed). Roots are
/// bracketed on the panel edges (panels where the target is not monotone are
/// subdivided) and refined with Brent's method. Output is ordered by
/// (theta index, n, r index, alpha index, root).
LocusResult solve_equal_qfi(const LocusConfig& cfg);

/// Fills fidelity and mean photon numbers, building both states at the larger
/// of their automatic cutoffs.
void fidelity_sweep(const LocusConfig& cfg, std::vector<LocusPoint>& points);

}  // namespace subplanck
