#include "subplanck/metrics.hpp"

#include <cmath>
#include <sstream>

#include "subplanck/error.hpp"
#include "subplanck/state.hpp"

namespace subplanck {
namespace {

void refuse_flagged(const FockVector& psi, double tol, const char* what) {
  if (psi.flagged(tol)) {
    std::ostringstream os;
    os << what << ": input is flagged (tail mass " << psi.tail_mass() << " >= " << tol
       << " at cutoff " << psi.cutoff() << ")";
    fail(ErrorKind::truncation, os.str());
  }
}

}  // namespace

std::string_view to_string(QfiConvention c) noexcept {
  return c == QfiConvention::intro ? "intro" : "appendix";
}

std::optional<QfiConvention> convention_from_string(std::string_view name) noexcept {
  if (name == "appendix") return QfiConvention::appendix;
  if (name == "intro") return QfiConvention::intro;
  return std::nullopt;
}

double convention_factor(QfiConvention c) noexcept { return c == QfiConvention::intro ? 4.0 : 1.0; }

Complex fock_moment(const FockVector& psi, int n, int m) {
  if (n < 0 || m < 0) fail(ErrorKind::validation, "fock_moment: negative order");
  const int top = psi.cutoff() + std::max(n, m);
  const FockVector left = raise_extended(psi, n).resized(top);
  const FockVector right = raise_extended(psi, m).resized(top);
  return inner(left, right);
}

GeneratorMoments assemble_generator_moments(const std::function<Complex(int, int)>& f, int n0,
                                            double theta) {
  auto ph = [&](int n, int m) { return f(n, m) * std::polar(1.0, theta * (m - n)); };
  const Complex norm = f(n0, n0);
  if (std::abs(norm) < 1e-14) {
    fail(ErrorKind::validation, "degenerate normalization: |f[n0,n0]| < 1e-14");
  }
  const Complex mean = (ph(n0 + 1, n0) + ph(n0, n0 + 1)) / norm;
  const Complex second =
      (ph(n0, n0 + 2) + 2.0 * ph(n0 + 1, n0 + 1) + ph(n0 + 2, n0)) / norm - 1.0;
  return {mean.real(), second.real()};
}

double generator_variance(const FockVector& psi, double theta, double tail_tolerance) {
  refuse_flagged(psi, tail_tolerance, "qfi");
  const auto mom =
      assemble_generator_moments([&](int n, int m) { return fock_moment(psi, n, m); }, 0, theta);
  return std::max(0.0, mom.variance());
}

double qfi_displacement(const FockVector& psi, double theta, QfiConvention convention,
                        double tail_tolerance) {
  return convention_factor(convention) * generator_variance(psi, theta, tail_tolerance);
}

double fidelity(const FockVector& phi, const FockVector& psi, double tail_tolerance) {
  refuse_flagged(phi, tail_tolerance, "fidelity");
  refuse_flagged(psi, tail_tolerance, "fidelity");
  const Complex ov = inner(phi, psi);
  return std::min(1.0, std::norm(ov) / (phi.norm_squared() * psi.norm_squared()));
}

PhotonStats mean_photon(const FockVector& psi, double tail_tolerance) {
  refuse_flagged(psi, tail_tolerance, "mean_photon");
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const double p = std::norm(psi[n]);
    const double k = static_cast<double>(n);
    s0 += p;
    s1 += k * p;
    s2 += k * k * p;
  }
  const double mean = s1 / s0;
  return {mean, std::max(0.0, s2 / s0 - mean * mean)};
}

double predicted_pa_ps_energy(double mean, double variance, PhotonOp op) {
  if (!(mean >= 0.0) || !(variance >= 0.0) || !std::isfinite(mean) || !std::isfinite(variance)) {
    fail(ErrorKind::validation, "photon statistics must be finite and non-negative");
  }
  if (op == PhotonOp::add) return variance / (mean + 1.0) + mean + 1.0;
  if (mean == 0.0) fail(ErrorKind::validation, "photon subtraction from a state with <n> = 0");
  return variance / mean + mean - 1.0;
}

double measured_pa_ps_energy(const FockVector& psi, PhotonOp op, double tail_tolerance) {
  refuse_flagged(psi, tail_tolerance, "measured_pa_ps_energy");
  const FockVector moved = op == PhotonOp::add ? raise_extended(psi, 1) : lower(psi, 1);
  if (!(moved.norm() > 0.0)) fail(ErrorKind::validation, "photon subtraction annihilates the state");
  return mean_photon(normalize(moved), 1.0).mean;
}

double small_param_limit_check(LimitKind kind, int n, double param, int cutoff) {
  if (n < 1) fail(ErrorKind::validation, "limit check needs n >= 1");
  if (!(param > 0.0) || !std::isfinite(param)) {
    fail(ErrorKind::validation, "limit check needs a positive finite parameter");
  }
  const int target = kind == LimitKind::squeeze_diff ? 2 * n : n;
  if (target >= guard_band_begin(cutoff)) {
    fail(ErrorKind::truncation, "limit check: cutoff too small for the target number state");
  }
  FockVector v = FockVector::vacuum(cutoff);
  for (int k = 0; k < n; ++k) {
    v = kind == LimitKind::squeeze_diff ? squeeze(v, param) - squeeze(v, -param)
                                        : displace(v, param) - displace(v, -param);
  }
  if (!(v.norm() > 0.0)) fail(ErrorKind::solver, "limit check: difference vanished numerically");
  return fidelity(normalize(v), FockVector::number_state(target, cutoff));
}

MetricReport make_report(const FockVector& psi, double theta, QfiConvention convention,
                         double tail_tolerance) {
  MetricReport rep;
  rep.convention = convention;
  rep.theta = theta;
  rep.qfi_var_g = generator_variance(psi, theta, tail_tolerance);
  rep.qfi = convention_factor(convention) * rep.qfi_var_g;
  const PhotonStats st = mean_photon(psi, tail_tolerance);
  rep.mean_n = st.mean;
  rep.var_n = st.variance;
  rep.parity = parity_expectation(psi, tail_tolerance);
  rep.cutoff = psi.cutoff();
  rep.tail_mass = psi.tail_mass();
  return rep;
}

}  // namespace subplanck
