#include "subplanck/oracle.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "subplanck/bivar_poly.hpp"
#include "subplanck/error.hpp"

namespace subplanck {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex extract(const BivarPoly& p, const CrossTermParams& c, double r) {
  const Complex d = p.coefficient(c.m, c.n) * factorial(c.m) * factorial(c.n);
  const double sign = c.n % 2 == 0 ? 1.0 : -1.0;
  const Complex out = sign * d / std::sqrt(std::cosh(r));
  if (!finite(out)) fail(ErrorKind::solver, "cross term: nonfinite result");
  return out;
}

double relative_deviation(Complex a, Complex ref) {
  return std::abs(a - ref) / std::max(1.0, std::abs(ref));
}

// Cutoff at which |beta> squeezed by r and the bra side both fit with negligible tail.
FockVector coherent_squeezed(Complex z, double r, int cutoff) {
  FockVector v = FockVector::vacuum(cutoff);
  if (z != Complex{}) v = displace(v, z);
  if (r != 0.0) v = squeeze(v, r);
  return v;
}

}  // namespace

void CrossTermParams::validate() const {
  if (n < 0 || m < 0) fail(ErrorKind::validation, "cross term orders must be >= 0");
  if (n + m > kMaxCrossTermDegree) {
    fail(ErrorKind::validation, "cross term degree n + m = " + std::to_string(n + m) +
                                    " exceeds the ceiling " + std::to_string(kMaxCrossTermDegree));
  }
  if (!std::isfinite(r1) || !std::isfinite(r2) || !finite(alpha) || !finite(beta)) {
    fail(ErrorKind::validation, "cross term parameters must be finite");
  }
  if (!std::isfinite(std::cosh(r1 + r2))) fail(ErrorKind::validation, "cosh(r1 + r2) overflows");
}

Complex cross_term(const CrossTermParams& p) {
  p.validate();
  const int d = p.n + p.m;
  const double r = p.r1 + p.r2;
  const double ch2 = std::cosh(p.r2), sh2 = std::sinh(p.r2);
  const double t = std::tanh(r), sech = 1.0 / std::cosh(r);
  const Complex ac = std::conj(p.alpha), bc = std::conj(p.beta);

  const BivarPoly gg = BivarPoly::linear(d, 0.0, 1.0, 0.0) * BivarPoly::linear(d, 0.0, 0.0, 1.0);
  const BivarPoly gb = BivarPoly::linear(d, 0.0, ch2, sh2);   // gbar
  const BivarPoly gbc = BivarPoly::linear(d, 0.0, sh2, ch2);  // gbar*
  const BivarPoly z = gb + p.beta;
  const BivarPoly zc = gbc + bc;

  BivarPoly e = gg * Complex(-0.5);
  e = e + (gb * bc - gbc * p.beta) * Complex(0.5);
  e = e - (z * zc + std::norm(p.alpha)) * Complex(0.5);
  e = e + (-0.5 * t * ac * ac);
  e = e + z * z * Complex(0.5 * t);
  e = e + z * (ac * sech);
  return extract(e.exp(), p, r);
}

Complex cross_term_printed(const CrossTermParams& p) {
  p.validate();
  const int d = p.n + p.m;
  const double r = p.r1 + p.r2;
  const double ch2 = std::cosh(p.r2), sh2 = std::sinh(p.r2);
  const double t = std::tanh(r);
  const Complex ar = p.alpha * std::cosh(r) + std::conj(p.alpha) * std::sinh(r);
  const Complex arc = std::conj(ar);
  const Complex bc = std::conj(p.beta);

  const BivarPoly gg = BivarPoly::linear(d, 0.0, 1.0, 0.0) * BivarPoly::linear(d, 0.0, 0.0, 1.0);
  const BivarPoly gb = BivarPoly::linear(d, 0.0, ch2, sh2);
  const BivarPoly gbc = BivarPoly::linear(d, 0.0, sh2, ch2);
  const BivarPoly delta = gb + (p.beta - ar);
  const BivarPoly deltac = gbc + std::conj(p.beta - ar);

  const BivarPoly e1 = delta * delta * Complex(0.5 * t) - (delta * deltac + gg) * Complex(0.5);
  // i Im[X] = (X - X*) / 2 with the formal conjugate
  const BivarPoly x = (gb + (-ar)) * bc - gbc * ar;
  const BivarPoly xc = (gbc + (-arc)) * p.beta - gb * arc;
  const BivarPoly e2 = (x - xc) * Complex(0.5);
  return extract((e1 + e2).exp(), p, r);
}

Complex fock_cross_term(const CrossTermParams& p, int cutoff) {
  p.validate();
  auto attempt = [&](int n) -> std::optional<Complex> {
    const FockVector ket = coherent_squeezed(p.beta, p.r2, n);
    const FockVector bra = coherent_squeezed(p.alpha, -p.r1, n);
    if (cutoff == 0 && (ket.tail_mass() > 1e-20 || bra.tail_mass() > 1e-20)) return std::nullopt;
    const int top = n + p.m;
    const FockVector k = lower(raise_extended(ket, p.m), p.n);
    return inner(bra.resized(top), k);
  };
  if (cutoff > 0) return *attempt(cutoff);
  for (int n = kMinLadderCutoff; n <= kMaxCutoff; n *= 2) {
    try {
      if (auto v = attempt(n)) return *v;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::truncation) throw;
    }
  }
  fail(ErrorKind::truncation, "fock_cross_term: no cutoff up to the ceiling resolves the terms");
}

bool oracle_supports(const StateSpec& spec) {
  if (spec.phi == 0.0) return true;
  return spec.family != Family::sq && spec.family != Family::ss && spec.family != Family::ssd;
}

Complex moment_f(const StateSpec& spec, int n, int m, double theta) {
  spec.validate();
  if (!oracle_supports(spec)) {
    fail(ErrorKind::validation, "moment_f: closed form covers squeeze phase 0 only");
  }
  const std::vector<Branch> bs = branches(spec);
  Complex sum{};
  for (const Branch& bra : bs) {
    for (const Branch& ket : bs) {
      CrossTermParams c{n, m, -bra.squeeze_r, ket.squeeze_r, bra.displacement, ket.displacement};
      sum += std::conj(bra.weight) * ket.weight * cross_term(c);
    }
  }
  return sum * std::polar(1.0, theta * (m - n));
}

Complex fock_moment_f(const StateSpec& spec, int n, int m, double theta) {
  spec.validate();
  const int cutoff =
      auto_cutoff([&](int c) { return build_superposition(spec, c); }, 1e-18);
  const FockVector psi0 = build_superposition(spec, cutoff);
  return fock_moment(psi0, n, m) * std::polar(1.0, theta * (m - n));
}

double qfi_closed_form(const StateSpec& spec, double theta, QfiConvention convention) {
  if (spec.n_sub > 0) fail(ErrorKind::validation, "qfi_closed_form: photon subtraction unsupported");
  std::map<std::pair<int, int>, Complex> cache;
  auto f = [&](int n, int m) {
    const auto key = std::make_pair(n, m);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, moment_f(spec, n, m, 0.0)).first;
    return it->second;
  };
  const auto mom = assemble_generator_moments(f, spec.n_add, theta);
  return convention_factor(convention) * std::max(0.0, mom.variance());
}

OracleReport verify_oracle(std::uint64_t seed, int samples, double tolerance) {
  if (samples < 1) fail(ErrorKind::validation, "verify_oracle needs at least one sample");
  OracleReport rep;
  rep.seed = seed;
  rep.tolerance = tolerance;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  auto pick = [&](int count) { return static_cast<int>(rng() % static_cast<std::uint64_t>(count)); };
  auto amplitude = [&] {
    const double mag = uniform(0.0, 2.0);
    return std::polar(mag, uniform(0.0, 2.0 * std::numbers::pi));
  };

  constexpr std::array families{Family::ssd, Family::ss, Family::ks_plus, Family::ks_minus,
                                Family::cat, Family::coherent, Family::sq};

  double sum_dev = 0.0;
  for (int s = 0; s < samples; ++s) {
    StateSpec spec;
    spec.family = families[static_cast<std::size_t>(pick(static_cast<int>(families.size())))];
    switch (spec.family) {
      case Family::ssd: spec = StateSpec::ssd(uniform(0.0, 1.0), amplitude()); break;
      case Family::ss: spec = StateSpec::ss(uniform(0.0, 1.0)); break;
      case Family::sq: spec = StateSpec::squeezed(uniform(0.0, 1.0)); break;
      case Family::coherent: spec = StateSpec::coherent(amplitude()); break;
      case Family::cat: spec = StateSpec::cat(amplitude(), pick(2)); break;
      case Family::ks_plus: spec = StateSpec::ks_plus(amplitude(), pick(4)); break;
      case Family::ks_minus: spec = StateSpec::ks_minus(amplitude(), pick(2)); break;
    }
    spec.n_add = pick(4);

    OracleSample smp;
    smp.spec = spec;
    smp.n = pick(5);
    smp.m = pick(5);
    smp.theta = pick(8) * std::numbers::pi / 4.0;
    smp.closed = moment_f(spec, smp.n, smp.m, smp.theta);
    smp.fock = fock_moment_f(spec, smp.n, smp.m, smp.theta);
    smp.deviation = relative_deviation(smp.closed, smp.fock);

    const Complex mirrored = moment_f(spec, smp.m, smp.n, smp.theta);
    if (relative_deviation(std::conj(mirrored), smp.closed) > tolerance) ++rep.hermiticity_failures;

    // Components that nearly cancel (high l at tiny amplitude) leave the
    // normalization to roundoff; QFI is not compared there.
    double weight = 0.0;
    for (const Branch& b : branches(spec)) weight += std::norm(b.weight);
    const double kept = std::abs(moment_f(spec, 0, 0, 0.0)) / weight;
    try {
      if (kept < 1e-6) fail(ErrorKind::validation, "ill-conditioned superposition");
      smp.qfi_closed = qfi_closed_form(spec, smp.theta);
      smp.qfi_fock = qfi_displacement(make_state(spec, 1e-15), smp.theta);
      smp.qfi_deviation = std::abs(smp.qfi_closed - smp.qfi_fock) / std::max(1.0, smp.qfi_fock);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::validation) throw;
      smp.qfi_degenerate = true;  // the photon-added state has (numerically) zero norm
    }

    sum_dev += smp.deviation;
    rep.max_deviation = std::max(rep.max_deviation, smp.deviation);
    rep.max_qfi_deviation = std::max(rep.max_qfi_deviation, smp.qfi_deviation);
    if (smp.deviation > tolerance || smp.qfi_deviation > tolerance) ++rep.failures;
    rep.samples.push_back(std::move(smp));
  }
  rep.mean_deviation = sum_dev / samples;

  // Itemize where the printed cross-term variant departs from the Fock path.
  const int printed_count = std::min(samples, 40);
  for (int s = 0; s < printed_count; ++s) {
    PrintedDeviation pd;
    const bool plain = s < 4;  // r = 0, n = m = 0: the coherent-overlap corner
    pd.params = {plain ? 0 : pick(5), plain ? 0 : pick(5), plain ? 0.0 : uniform(-1.0, 1.0),
                 plain ? 0.0 : uniform(-1.0, 1.0), amplitude(), amplitude()};
    pd.derived = cross_term(pd.params);
    pd.printed = cross_term_printed(pd.params);
    pd.fock = fock_cross_term(pd.params);
    pd.deviation = relative_deviation(pd.printed, pd.fock);
    if (pd.deviation > tolerance) ++rep.printed_mismatches;
    if (relative_deviation(pd.derived, pd.fock) > tolerance) ++rep.failures;
    rep.printed.push_back(pd);
  }

  rep.pass = rep.failures == 0 && rep.hermiticity_failures == 0;
  return rep;
}

}  // namespace subplanck
