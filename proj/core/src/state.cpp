#include "subplanck/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "subplanck/error.hpp"

namespace subplanck {
namespace {

// i^k for any integer k, exact.
Complex ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

int mod(int a, int m) { return ((a % m) + m) % m; }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::coherent: return "coherent";
    case Family::cat: return "cat";
    case Family::ks_plus: return "ks_plus";
    case Family::ks_minus: return "ks_minus";
    case Family::sq: return "sq";
    case Family::ss: return "ss";
    case Family::ssd: return "ssd";
  }
  return "unknown";
}

std::optional<Family> family_from_string(std::string_view name) noexcept {
  for (Family f : {Family::coherent, Family::cat, Family::ks_plus, Family::ks_minus, Family::sq,
                   Family::ss, Family::ssd}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

StateSpec StateSpec::coherent(Complex alpha) {
  StateSpec s;
  s.family = Family::coherent;
  s.alpha = alpha;
  return s;
}

StateSpec StateSpec::cat(Complex beta, int l) {
  StateSpec s;
  s.family = Family::cat;
  s.beta = beta;
  s.l = l;
  return s;
}

StateSpec StateSpec::ks_plus(Complex beta, int l) {
  StateSpec s = cat(beta, l);
  s.family = Family::ks_plus;
  return s;
}

StateSpec StateSpec::ks_minus(Complex beta, int l) {
  StateSpec s = cat(beta, l);
  s.family = Family::ks_minus;
  return s;
}

StateSpec StateSpec::squeezed(double r, double phi) {
  StateSpec s;
  s.family = Family::sq;
  s.r = r;
  s.phi = phi;
  return s;
}

StateSpec StateSpec::ss(double r, double phi) {
  StateSpec s = squeezed(r, phi);
  s.family = Family::ss;
  return s;
}

StateSpec StateSpec::ssd(double r, Complex alpha, double phi) {
  StateSpec s = squeezed(r, phi);
  s.family = Family::ssd;
  s.alpha = alpha;
  return s;
}

StateSpec StateSpec::with_added(int n) const {
  StateSpec s = *this;
  s.n_add = n;
  return s;
}

StateSpec StateSpec::with_subtracted(int n) const {
  StateSpec s = *this;
  s.n_sub = n;
  return s;
}

int basis_size(Family family) {
  switch (family) {
    case Family::cat:
    case Family::ks_minus: return 2;
    case Family::ks_plus: return 4;
    default: return 1;
  }
}

void StateSpec::validate() const {
  auto bad = [](const std::string& m) { fail(ErrorKind::validation, m); };
  if (!finite(alpha) || !finite(beta) || !std::isfinite(r) || !std::isfinite(phi)) {
    bad("state parameters must be finite");
  }
  if (r < 0.0) bad("squeeze magnitude r must be >= 0");
  if (n_add < 0 || n_sub < 0) bad("photon addition/subtraction counts must be >= 0");
  if (n_add > 0 && n_sub > 0) bad("n_add and n_sub cannot both be nonzero");
  const int size = basis_size(family);
  if (family == Family::cat || family == Family::ks_plus || family == Family::ks_minus) {
    if (l < 0 || l >= size) {
      std::ostringstream os;
      os << to_string(family) << " requires l in {0.." << size - 1 << "}, got " << l;
      bad(os.str());
    }
  }
}

double FbarTable::at(int k1, int k0) {
  if (k1 < 0 || k1 > 3 || (k0 != 0 && k0 != 1)) {
    fail(ErrorKind::validation, "fbar index out of range");
  }
  return values[static_cast<std::size_t>(k1)][static_cast<std::size_t>(k0)];
}

double fbar_closed_form(int k1, int k0) {
  return std::pow(2.0, k0 / 2.0) *
         std::pow(std::sin((2.0 * k1 + 1.0) * std::numbers::pi / 4.0), k0);
}

std::vector<Branch> branches(const StateSpec& spec) {
  spec.validate();
  std::vector<Branch> out;
  switch (spec.family) {
    case Family::coherent:
      out.push_back({1.0, spec.alpha, 0.0});
      break;
    case Family::cat:
      for (int k = 0; k < 2; ++k) {
        // e^{i k l pi} = (-1)^{kl}
        out.push_back({(k * spec.l) % 2 == 0 ? 1.0 : -1.0, ipow(2 * k) * spec.beta, 0.0});
      }
      break;
    case Family::ks_plus:
    case Family::ks_minus: {
      const int k0 = spec.family == Family::ks_plus ? 0 : 1;
      for (int k = 0; k < 4; ++k) {
        out.push_back({FbarTable::at(k, k0) * ipow(-spec.l * k), ipow(k) * spec.beta, 0.0});
      }
      break;
    }
    case Family::sq:
      out.push_back({1.0, 0.0, spec.r});
      break;
    case Family::ss:
      out.push_back({1.0, 0.0, spec.r});
      out.push_back({1.0, 0.0, -spec.r});
      break;
    case Family::ssd:
      out.push_back({1.0, spec.alpha, spec.r});
      out.push_back({1.0, -spec.alpha, spec.r});
      break;
  }
  return out;
}

FockVector build_superposition(const StateSpec& spec, int cutoff) {
  const FockVector vac = FockVector::vacuum(cutoff);
  const std::vector<Branch> bs = branches(spec);
  // Branches sharing a squeeze are summed first so S is applied once per value.
  std::vector<double> squeezes;
  for (const Branch& b : bs) {
    if (std::find(squeezes.begin(), squeezes.end(), b.squeeze_r) == squeezes.end()) {
      squeezes.push_back(b.squeeze_r);
    }
  }
  FockVector sum(cutoff);
  for (double r : squeezes) {
    FockVector part(cutoff);
    for (const Branch& b : bs) {
      if (b.squeeze_r != r) continue;
      const FockVector v = b.displacement == Complex{} ? vac : displace(vac, b.displacement);
      part = part + b.weight * v;
    }
    if (r != 0.0) part = squeeze(part, r, spec.phi);
    sum = sum + part;
  }
  return sum;
}

FockVector build_state(const StateSpec& spec, int cutoff) {
  FockVector v = build_superposition(spec, cutoff);
  if (spec.n_add > 0) v = raise(v, spec.n_add);
  if (spec.n_sub > 0) v = lower(v, spec.n_sub);
  if (!(v.norm() > 1e-150)) {
    fail(ErrorKind::validation, "state " + std::string(to_string(spec.family)) +
                                    " vanishes for these parameters");
  }
  return normalize(v);
}

int auto_cutoff(const StateSpec& spec, double eps) {
  spec.validate();
  return auto_cutoff([&](int n) { return build_state(spec, n); }, eps);
}

FockVector make_state(const StateSpec& spec, double eps, int min_cutoff) {
  const int n = std::max(auto_cutoff(spec, eps), min_cutoff);
  return build_state(spec, n);
}

double parity_expectation(const FockVector& psi, double tail_tolerance) {
  if (psi.flagged(tail_tolerance)) {
    fail(ErrorKind::truncation, "parity_expectation: state is flagged (tail mass " +
                                    std::to_string(psi.tail_mass()) + ")");
  }
  double s = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) s += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(psi[n]);
  return s / psi.norm_squared();
}

// ------------------------------------------------------------------ pairings

std::string_view to_string(PairLabel label) noexcept {
  switch (label) {
    case PairLabel::prstrg1: return "prstrg-1";
    case PairLabel::prstrg2: return "prstrg-2";
    case PairLabel::prstrg3: return "prstrg-3";
    case PairLabel::trgtrgn1: return "trgtrgn-1";
    case PairLabel::trgtrgp2: return "trgtrgp-2";
    case PairLabel::trgtrgE3: return "trgtrgE-3";
  }
  return "unknown";
}

std::optional<PairLabel> pair_from_string(std::string_view name) noexcept {
  for (PairLabel p : {PairLabel::prstrg1, PairLabel::prstrg2, PairLabel::prstrg3,
                      PairLabel::trgtrgn1, PairLabel::trgtrgp2, PairLabel::trgtrgE3}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

int PairSpec::target_l() const {
  if (n < 0) fail(ErrorKind::validation, "pair photon count must be >= 0");
  switch (label) {
    case PairLabel::prstrg1: return n % 2 == 0 ? 1 : 0;  // (1 + e^{i n pi}) / 2
    case PairLabel::prstrg2: return n % 4;
    case PairLabel::prstrg3: return n % 2;
    case PairLabel::trgtrgn1:
    case PairLabel::trgtrgE3:
      if (source_l < 0 || source_l > 1) fail(ErrorKind::validation, "source l must be 0 or 1");
      return mod(source_l + n, 2);
    case PairLabel::trgtrgp2:
      if (source_l < 0 || source_l > 3) fail(ErrorKind::validation, "source l must be in 0..3");
      return mod(source_l + n, 4);
  }
  return 0;
}

Complex default_beta_phase(PairLabel label) {
  switch (label) {
    case PairLabel::prstrg1:
    case PairLabel::trgtrgn1: return std::polar(1.0, std::numbers::pi / 4.0);
    // S[r] with r > 0 stretches the p quadrature, so the cat sits on the imaginary axis.
    case PairLabel::prstrg3: return {0.0, 1.0};
    default: return {1.0, 0.0};
  }
}

ResolvedPair resolve_pair(const PairSpec& pair, const PairParams& p) {
  const int l = pair.target_l();
  const Complex beta = p.beta * p.beta_phase;
  const Complex source = p.alpha * p.beta_phase;
  ResolvedPair out;
  switch (pair.label) {
    case PairLabel::prstrg1:
      out.proposed = StateSpec::ssd(p.r, p.alpha).with_added(pair.n);
      out.target = StateSpec::ks_minus(beta, l);
      break;
    case PairLabel::prstrg2:
      out.proposed = StateSpec::ss(p.r).with_added(pair.n);
      out.target = StateSpec::ks_plus(beta, l);
      break;
    case PairLabel::prstrg3:
      out.proposed = StateSpec::squeezed(p.r).with_added(pair.n);
      out.target = StateSpec::cat(beta, l);
      break;
    case PairLabel::trgtrgn1:
      out.proposed = StateSpec::ks_minus(source, pair.source_l).with_added(pair.n);
      out.target = StateSpec::ks_minus(beta, l);
      break;
    case PairLabel::trgtrgp2:
      out.proposed = StateSpec::ks_plus(source, pair.source_l).with_added(pair.n);
      out.target = StateSpec::ks_plus(beta, l);
      break;
    case PairLabel::trgtrgE3:
      out.proposed = StateSpec::cat(source, pair.source_l).with_added(pair.n);
      out.target = StateSpec::cat(beta, l);
      break;
  }
  out.proposed.validate();
  out.target.validate();
  return out;
}

}  // namespace subplanck
