#pragma once

#include <cstdint>
#include <vector>

#include "subplanck/fock.hpp"
#include "subplanck/metrics.hpp"
#include "subplanck/state.hpp"

namespace subplanck {

/// Highest total derivative order n + m the closed form will expand to.
inline constexpr int kMaxCrossTermDegree = 12;

/// Parameters of C = <alpha| S[r1] a^n a^dag^m S[r2] |beta> with real squeeze
/// magnitudes (phase 0, negative values allowed).
struct CrossTermParams {
  int n = 0;
  int m = 0;
  double r1 = 0.0;
  double r2 = 0.0;
  Complex alpha{};
  Complex beta{};

  void validate() const;
};

/// Closed form. With a^n a^dag^m = (-1)^n d^n_{g*} d^m_g [e^{-g g*/2} D(g)] at g = 0
/// and D(g) S[r2] = S[r2] D(gbar), gbar = g cosh r2 + g* sinh r2:
///   C = (-1)^n d^n_{g*} d^m_g [ e^{-g g*/2} e^{(gbar beta* - gbar* beta)/2}
///                               <alpha| S[r1 + r2] |beta + gbar> ]
/// with <alpha|S[r]|z> = exp(-(|alpha|^2 + |z|^2)/2 - tanh(r) alpha*^2/2
///                           + tanh(r) z^2/2 + alpha* z / cosh r) / sqrt(cosh r).
/// g and g* are independent series variables.
Complex cross_term(const CrossTermParams& p);

/// The commonly printed variant
///   (-1)^n / sqrt(cosh r) d^n_{g*} d^m_g [ exp(tanh(r) delta^2/2 - (|delta|^2 + |g|^2)/2)
///                                         exp(i Im[beta* (gbar - abar) - gbar* abar]) ]
/// with abar = alpha cosh r + alpha* sinh r and delta = beta + gbar - abar,
/// evaluated literally; verify_oracle itemizes its deviation from the Fock path.
Complex cross_term_printed(const CrossTermParams& p);

/// Same matrix element by Fock-space products. cutoff 0 selects one automatically.
Complex fock_cross_term(const CrossTermParams& p, int cutoff = 0);

/// Families the branch expansion covers: every family with squeeze phase 0.
bool oracle_supports(const StateSpec& spec);

/// f[n,m] = e^{i theta (m - n)} <psi0| a^n a^dag^m |psi0> for the unnormalized
/// superposition psi0 of the spec (photon addition excluded), as a double sum
/// of cross terms over its branches.
Complex moment_f(const StateSpec& spec, int n, int m, double theta);

/// The same moment from the Fock-space superposition.
Complex fock_moment_f(const StateSpec& spec, int n, int m, double theta);

/// F_Q of a^dag^{n_add} psi0 from closed-form moments.
double qfi_closed_form(const StateSpec& spec, double theta,
                       QfiConvention convention = QfiConvention::appendix);

struct OracleSample {
  StateSpec spec;
  int n = 0;
  int m = 0;
  double theta = 0.0;
  Complex closed{};
  Complex fock{};
  double deviation = 0.0;  // |closed - fock| / max(1, |fock|)
  double qfi_closed = 0.0;
  double qfi_fock = 0.0;
  double qfi_deviation = 0.0;
  bool qfi_degenerate = false;
};

struct PrintedDeviation {
  CrossTermParams params;
  Complex derived{};
  Complex printed{};
  Complex fock{};
  double deviation = 0.0;  // printed vs fock, relative as above
};

struct OracleReport {
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  std::vector<OracleSample> samples;
  double max_deviation = 0.0;
  double mean_deviation = 0.0;
  double max_qfi_deviation = 0.0;
  int failures = 0;
  int hermiticity_failures = 0;
  std::vector<PrintedDeviation> printed;
  int printed_mismatches = 0;
  bool pass = false;
};

/// Randomized comparison of the closed form against the Fock path over
/// families x n_add <= 3 x n, m <= 4 x r <= 1 x |alpha|, |beta| <= 2 x an
/// 8-point theta grid, plus an itemized check of the printed cross-term variant.
OracleReport verify_oracle(std::uint64_t seed, int samples = 200, double tolerance = 1e-8);

}  // namespace subplanck
