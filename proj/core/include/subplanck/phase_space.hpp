#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subplanck/fock.hpp"

namespace subplanck {

/// Rectangular sampling of the complex plane beta = x + i p. Samples include
/// both endpoints.
struct GridSpec {
  double x_min = -4.0;
  double x_max = 4.0;
  double p_min = -4.0;
  double p_max = 4.0;
  int nx = 101;
  int np = 101;

  void validate() const;
  double x(int i) const noexcept;
  double p(int j) const noexcept;
  double dx() const noexcept { return (x_max - x_min) / (nx - 1); }
  double dp() const noexcept { return (p_max - p_min) / (np - 1); }
};

/// Square grid of half-width sqrt(2 <n> + 1) + 3 centered on the origin.
GridSpec auto_grid(const FockVector& psi, int samples = 101);

/// Values in row-major order: values[j * nx + i] belongs to (x(i), p(j)).
struct PhaseGrid {
  GridSpec spec;
  std::vector<double> values;
  std::vector<std::string> warnings;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j * spec.nx + i)]; }
};

/// Cutoff that holds D[beta] psi for every |beta| <= radius without touching the top.
int working_cutoff(const FockVector& psi, double radius);

/// W(beta) = (2/pi) <psi| D[beta] Pi D[-beta] |psi>.
double wigner_at(const FockVector& psi, Complex beta, double tail_tolerance = kDefaultTailTolerance);
PhaseGrid wigner(const FockVector& psi, const GridSpec& grid,
                 double tail_tolerance = kDefaultTailTolerance);

/// chi(lambda) = <psi| D[lambda] |psi>.
Complex characteristic(const FockVector& psi, Complex lambda,
                       double tail_tolerance = kDefaultTailTolerance);

/// O_lambda = |<psi|D[lambda]|psi>|^2, so O_0 = 1.
double overlap_field(const FockVector& psi, Complex lambda,
                     double tail_tolerance = kDefaultTailTolerance);
PhaseGrid overlap_grid(const FockVector& psi, const GridSpec& grid,
                       double tail_tolerance = kDefaultTailTolerance);

enum class FringeSource { overlap, wigner };

std::string_view to_string(FringeSource s) noexcept;
std::optional<FringeSource> fringe_source_from_string(std::string_view name) noexcept;

struct ZeroSearch {
  double search_radius = 3.0;
  double zero_threshold = 1e-10;
  double relative_tolerance = 1e-6;
  FringeSource source = FringeSource::overlap;
};

/// Smallest t > 0 where the field along t e^{i dir} vanishes (O <= threshold, or
/// a sign change of W for the wigner source). nullopt when nothing is found
/// within the search radius.
std::optional<double> first_zero(const FockVector& psi, double direction,
                                 const ZeroSearch& opts = {},
                                 double tail_tolerance = kDefaultTailTolerance);

struct FringeDirection {
  double theta = 0.0;
  double radius = 0.0;
  bool found = false;  // false: radius is the search cap
};

struct FringeReport {
  FringeSource source = FringeSource::overlap;
  std::vector<FringeDirection> lambda_zero;
  double cfa = 0.0;
  double zero_fraction = 0.0;
  double search_radius = 3.0;
  /// Directions evaluated, including those added by adaptive refinement.
  int evaluated_directions = 0;
};

struct FringeOptions {
  int n_directions = 64;
  /// Minimum share of directions that must carry a zero.
  double min_zero_fraction = 0.5;
  ZeroSearch search;
  /// Each uniform interval is bisected until the trapezoid estimate of its
  /// area changes by less than refine_tolerance per radian, so
  /// jumps of the first-zero radius and found/capped transitions are
  /// localised instead of smeared over a whole interval.
  double refine_tolerance = 1e-4;
  int max_refine_depth = 12;
};

/// Area (1/2) \oint r(theta)^2 dtheta of the first-zero curve, adaptive
/// trapezoid rule seeded with uniformly spaced directions. The zero fraction
/// counts the uniform directions only. Throws ErrorKind::solver when fewer than
/// min_zero_fraction of the directions carry a zero.
FringeReport central_fringe_area(const FockVector& psi, const FringeOptions& opts = {},
                                 double tail_tolerance = kDefaultTailTolerance);

}  // namespace subplanck
