#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "subplanck/fock.hpp"

namespace subplanck {

/// appendix: F_Q = Var G(theta), so the vacuum gives 1.
/// intro:    F_Q = 4 Var x(theta) with x = G/2 read in shot-noise units, i.e. 4 Var G; vacuum gives 4.
enum class QfiConvention { appendix, intro };

std::string_view to_string(QfiConvention c) noexcept;
std::optional<QfiConvention> convention_from_string(std::string_view name) noexcept;
/// Multiplier applied to Var G.
double convention_factor(QfiConvention c) noexcept;

/// <psi| a^n a^dag^m |psi>, exact: the raised copies are grown instead of truncated.
/// No normalization and no theta phase.
Complex fock_moment(const FockVector& psi, int n, int m);

/// <G> and <G^2> for G(theta) = a^dag e^{i theta} + a e^{-i theta}.
struct GeneratorMoments {
  double mean = 0.0;
  double second = 0.0;

  double variance() const noexcept { return second - mean * mean; }
};

/// Assembles <G>, <G^2> of a^dag^{n0} psi0 from raw moments f(n, m) = <psi0|a^n a^dag^m|psi0>:
///   <G>   = (f[n0+1,n0] + f[n0,n0+1]) / f[n0,n0]
///   <G^2> = (f[n0,n0+2] + 2 f[n0+1,n0+1] + f[n0+2,n0]) / f[n0,n0] - 1
/// with every f[n,m] carrying e^{i theta (m-n)}. Throws validation when |f[n0,n0]| < 1e-14.
GeneratorMoments assemble_generator_moments(const std::function<Complex(int, int)>& f, int n0,
                                            double theta);

/// Var G(theta). Refuses flagged input.
double generator_variance(const FockVector& psi, double theta,
                          double tail_tolerance = kDefaultTailTolerance);

double qfi_displacement(const FockVector& psi, double theta,
                        QfiConvention convention = QfiConvention::appendix,
                        double tail_tolerance = kDefaultTailTolerance);

/// |<phi|psi>|^2 / (|phi|^2 |psi|^2). Same cutoff required.
double fidelity(const FockVector& phi, const FockVector& psi,
                double tail_tolerance = kDefaultTailTolerance);

struct PhotonStats {
  double mean = 0.0;
  double variance = 0.0;
};

PhotonStats mean_photon(const FockVector& psi, double tail_tolerance = kDefaultTailTolerance);

enum class PhotonOp { add, subtract };

/// Mean photon number after one addition (PA) or subtraction (PS), from the
/// moments before it:
///   PA: var / (mean + 1) + mean + 1
///   PS: var / mean + mean - 1
double predicted_pa_ps_energy(double mean, double variance, PhotonOp op);

/// Mean photon number of normalize(a^dag psi) or normalize(a psi), measured by Fock sums.
double measured_pa_ps_energy(const FockVector& psi, PhotonOp op,
                             double tail_tolerance = kDefaultTailTolerance);

enum class LimitKind { squeeze_diff, displace_diff };

/// Fidelity of normalize((S[r] - S[-r])^n |0>) with |2n>, or of
/// normalize((D[a] - D[-a])^n |0>) with |n>.
double small_param_limit_check(LimitKind kind, int n, double param, int cutoff = 64);

struct MetricReport {
  QfiConvention convention = QfiConvention::appendix;
  double theta = 0.0;
  double qfi = 0.0;        // in the active convention
  double qfi_var_g = 0.0;  // Var G, convention independent
  std::optional<double> fidelity;
  double mean_n = 0.0;
  double var_n = 0.0;
  double parity = 0.0;
  int cutoff = 0;
  double tail_mass = 0.0;
};

MetricReport make_report(const FockVector& psi, double theta, QfiConvention convention,
                         double tail_tolerance = kDefaultTailTolerance);

}  // namespace subplanck
