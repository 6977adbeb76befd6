#include "subplanck/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "subplanck/error.hpp"

namespace subplanck {
namespace {

void require_cutoff(int cutoff) {
  if (cutoff < 1) fail(ErrorKind::validation, "cutoff must be >= 1, got " + std::to_string(cutoff));
}

void require_same_size(const FockVector& a, const FockVector& b, const char* what) {
  if (a.size() != b.size()) {
    fail(ErrorKind::dimension, std::string(what) + ": cutoff mismatch (" +
                                   std::to_string(a.cutoff()) + " vs " +
                                   std::to_string(b.cutoff()) + ")");
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Sparse action of the truncated generators. Both are anti-Hermitian.
//   displacement: alpha a^dag - conj(alpha) a
//   squeeze:      (r/2)(e^{-i phi} a^2 - e^{i phi} a^dag^2)
struct Generator {
  OperatorTag tag;
  Complex c1;  // displacement: alpha;             squeeze: (r/2) e^{-i phi}
  Complex c2;  // displacement: conj(alpha);        squeeze: (r/2) e^{+i phi}

  void apply(const std::vector<Complex>& in, std::vector<Complex>& out) const {
    const std::size_t dim = in.size();
    const std::vector<double>& rt = sqrt_table();
    if (tag == OperatorTag::displace) {
      for (std::size_t n = 0; n < dim; ++n) {
        Complex acc{};
        if (n >= 1) acc += c1 * (rt[n] * in[n - 1]);
        if (n + 1 < dim) acc -= c2 * (rt[n + 1] * in[n + 1]);
        out[n] = acc;
      }
    } else {
      for (std::size_t n = 0; n < dim; ++n) {
        Complex acc{};
        if (n + 2 < dim) acc += c1 * (rt[n + 1] * rt[n + 2] * in[n + 2]);
        if (n >= 2) acc -= c2 * (rt[n] * rt[n - 1] * in[n - 2]);
        out[n] = acc;
      }
    }
  }

  static const std::vector<double>& sqrt_table() {
    static const std::vector<double> table = [] {
      std::vector<double> t(static_cast<std::size_t>(kMaxCutoff) + 8);
      for (std::size_t n = 0; n < t.size(); ++n) t[n] = std::sqrt(static_cast<double>(n));
      return t;
    }();
    return table;
  }

  // Max column sum of the truncated matrix.
  double one_norm(int cutoff) const {
    double best = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
      double col = 0.0;
      if (tag == OperatorTag::displace) {
        if (n + 1 <= cutoff) col += std::abs(c1) * std::sqrt(n + 1.0);
        if (n >= 1) col += std::abs(c2) * std::sqrt(static_cast<double>(n));
      } else {
        if (n + 2 <= cutoff) col += std::abs(c2) * std::sqrt((n + 1.0) * (n + 2.0));
        if (n >= 2) col += std::abs(c1) * std::sqrt(n * (n - 1.0));
      }
      best = std::max(best, col);
    }
    return best;
  }

  Eigen::MatrixXcd dense(int cutoff) const {
    const int dim = cutoff + 1;
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
      if (tag == OperatorTag::displace) {
        if (n >= 1) g(n, n - 1) = c1 * std::sqrt(static_cast<double>(n));
        if (n + 1 < dim) g(n, n + 1) = -c2 * std::sqrt(n + 1.0);
      } else {
        if (n + 2 < dim) g(n, n + 2) = c1 * std::sqrt((n + 1.0) * (n + 2.0));
        if (n >= 2) g(n, n - 2) = -c2 * std::sqrt(n * (n - 1.0));
      }
    }
    return g;
  }
};

Generator make_generator(const OperatorKind& kind) {
  if (kind.tag == OperatorTag::displace) {
    return {OperatorTag::displace, kind.alpha, std::conj(kind.alpha)};
  }
  const Complex half = 0.5 * kind.r;
  return {OperatorTag::squeeze, half * std::polar(1.0, -kind.phi),
          half * std::polar(1.0, kind.phi)};
}

void validate_parameters(const OperatorKind& kind) {
  if (kind.tag == OperatorTag::displace && !finite(kind.alpha)) {
    fail(ErrorKind::validation, "displacement amplitude must be finite");
  }
  if (kind.tag == OperatorTag::squeeze && !(std::isfinite(kind.r) && std::isfinite(kind.phi))) {
    fail(ErrorKind::validation, "squeeze parameters must be finite");
  }
}

// exp(G) v by truncated Taylor series with scaling: each of the s steps has
// ||G/s||_1 <= kStepNorm, and the series runs until terms drop below roundoff.
std::vector<Complex> exp_action(const Generator& gen, int cutoff, std::vector<Complex> v) {
  constexpr double kStepNorm = 1.5;
  constexpr int kMaxTerms = 80;
  const double norm = gen.one_norm(cutoff);
  if (norm == 0.0) return v;
  const int steps = std::max(1, static_cast<int>(std::ceil(norm / kStepNorm)));
  const double scale = 1.0 / steps;

  std::vector<Complex> term(v.size()), next(v.size());
  for (int s = 0; s < steps; ++s) {
    term = v;
    // squared magnitudes avoid a hypot per entry
    double vnorm2 = 0.0;
    for (const auto& z : v) vnorm2 = std::max(vnorm2, std::norm(z));
    for (int k = 1; k <= kMaxTerms; ++k) {
      gen.apply(term, next);
      const double f = scale / k;
      double tnorm2 = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        term[i] = next[i] * f;
        v[i] += term[i];
        tnorm2 = std::max(tnorm2, std::norm(term[i]));
      }
      if (tnorm2 <= 1e-36 * std::max(vnorm2, 1e-300)) break;
    }
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------- FockVector

int guard_band_begin(int cutoff) noexcept {
  // first n with n > 0.9 N
  return static_cast<int>(std::floor(kGuardBandStart * cutoff)) + 1;
}

FockVector::FockVector(int cutoff) {
  require_cutoff(cutoff);
  amps_.assign(static_cast<std::size_t>(cutoff) + 1, Complex{});
}

FockVector::FockVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  require_cutoff(static_cast<int>(amps_.size()) - 1);
  double total = 0.0, tail = 0.0;
  const std::size_t band = static_cast<std::size_t>(guard_band_begin(cutoff()));
  for (std::size_t n = 0; n < amps_.size(); ++n) {
    const double w = std::norm(amps_[n]);
    total += w;
    if (n >= band) tail += w;
  }
  tail_mass_ = total > 0.0 ? tail / total : 0.0;
}

FockVector FockVector::number_state(int n, int cutoff) {
  require_cutoff(cutoff);
  if (n < 0 || n > cutoff) {
    fail(ErrorKind::validation, "number state |" + std::to_string(n) + "> outside cutoff " +
                                    std::to_string(cutoff));
  }
  std::vector<Complex> a(static_cast<std::size_t>(cutoff) + 1);
  a[static_cast<std::size_t>(n)] = 1.0;
  return FockVector(std::move(a));
}

double FockVector::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& z : amps_) s += std::norm(z);
  return s;
}

double FockVector::norm() const noexcept { return std::sqrt(norm_squared()); }

FockVector FockVector::resized(int cutoff) const {
  require_cutoff(cutoff);
  std::vector<Complex> a(amps_);
  a.resize(static_cast<std::size_t>(cutoff) + 1);
  return FockVector(std::move(a));
}

FockVector operator+(const FockVector& a, const FockVector& b) {
  require_same_size(a, b, "add");
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return FockVector(std::move(out));
}

FockVector operator-(const FockVector& a, const FockVector& b) {
  require_same_size(a, b, "subtract");
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return FockVector(std::move(out));
}

FockVector operator*(Complex s, const FockVector& v) {
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return FockVector(std::move(out));
}

// ----------------------------------------------------------------- operators

std::string describe(const OperatorKind& kind) {
  std::ostringstream os;
  switch (kind.tag) {
    case OperatorTag::annihilate: os << "annihilate"; break;
    case OperatorTag::create: os << "create"; break;
    case OperatorTag::number: os << "number"; break;
    case OperatorTag::parity: os << "parity"; break;
    case OperatorTag::displace:
      os << "displace(" << kind.alpha.real() << (kind.alpha.imag() < 0 ? "" : "+")
         << kind.alpha.imag() << "i)";
      break;
    case OperatorTag::squeeze: os << "squeeze(r=" << kind.r << ",phi=" << kind.phi << ")"; break;
  }
  return os.str();
}

void check_generator_load(const OperatorKind& kind, int cutoff) {
  double load = 0.0;
  if (kind.tag == OperatorTag::displace) {
    load = std::norm(kind.alpha);
  } else if (kind.tag == OperatorTag::squeeze) {
    load = std::pow(std::sinh(kind.r), 2);
  } else {
    return;
  }
  if (load > kGeneratorLoadFraction * cutoff) {
    std::ostringstream os;
    os << describe(kind) << " injects photon load " << load << " > " << kGeneratorLoadFraction
       << " * cutoff " << cutoff;
    fail(ErrorKind::truncation, os.str());
  }
}

OperatorMatrix build_operator(const OperatorKind& kind, int cutoff) {
  require_cutoff(cutoff);
  validate_parameters(kind);
  const int dim = cutoff + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  switch (kind.tag) {
    case OperatorTag::annihilate:
      for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
      break;
    case OperatorTag::create:
      for (int n = 1; n < dim; ++n) m(n, n - 1) = std::sqrt(static_cast<double>(n));
      break;
    case OperatorTag::number:
      for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
      break;
    case OperatorTag::parity:
      for (int n = 0; n < dim; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
      break;
    case OperatorTag::displace:
    case OperatorTag::squeeze: {
      check_generator_load(kind, cutoff);
      const Eigen::MatrixXcd g = make_generator(kind).dense(cutoff);
      m = g.exp();
      break;
    }
  }
  return {std::move(m), kind};
}

FockVector apply(const OperatorMatrix& op, const FockVector& psi) {
  if (op.entries.rows() != static_cast<Eigen::Index>(psi.size())) {
    fail(ErrorKind::dimension, "apply: operator cutoff " + std::to_string(op.cutoff()) +
                                   " vs state cutoff " + std::to_string(psi.cutoff()));
  }
  const Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(),
                                             static_cast<Eigen::Index>(psi.size()));
  const Eigen::VectorXcd out = op.entries * v;
  return FockVector(std::vector<Complex>(out.data(), out.data() + out.size()));
}

Complex inner(const FockVector& bra, const FockVector& ket) {
  require_same_size(bra, ket, "inner");
  Complex s{};
  for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

FockVector normalize(const FockVector& psi) {
  const double n = psi.norm();
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorKind::validation, "cannot normalize a zero vector");
  return Complex(1.0 / n) * psi;
}

FockVector raise(const FockVector& psi, int times) {
  if (times < 0) fail(ErrorKind::validation, "raise: negative count");
  std::vector<Complex> a(psi.amplitudes().begin(), psi.amplitudes().end());
  for (int t = 0; t < times; ++t) {
    for (std::size_t n = a.size() - 1; n >= 1; --n) {
      a[n] = std::sqrt(static_cast<double>(n)) * a[n - 1];
    }
    a[0] = 0.0;
  }
  return FockVector(std::move(a));
}

FockVector raise_extended(const FockVector& psi, int times) {
  if (times < 0) fail(ErrorKind::validation, "raise: negative count");
  return raise(psi.resized(psi.cutoff() + times), times);
}

FockVector lower(const FockVector& psi, int times) {
  if (times < 0) fail(ErrorKind::validation, "lower: negative count");
  std::vector<Complex> a(psi.amplitudes().begin(), psi.amplitudes().end());
  for (int t = 0; t < times; ++t) {
    for (std::size_t n = 0; n + 1 < a.size(); ++n) {
      a[n] = std::sqrt(static_cast<double>(n + 1)) * a[n + 1];
    }
    a.back() = 0.0;
  }
  return FockVector(std::move(a));
}

FockVector displace(const FockVector& psi, Complex alpha) {
  const auto kind = OperatorKind::displace(alpha);
  validate_parameters(kind);
  check_generator_load(kind, psi.cutoff());
  std::vector<Complex> v(psi.amplitudes().begin(), psi.amplitudes().end());
  return FockVector(exp_action(make_generator(kind), psi.cutoff(), std::move(v)));
}

FockVector squeeze(const FockVector& psi, double r, double phi) {
  const auto kind = OperatorKind::squeeze(r, phi);
  validate_parameters(kind);
  check_generator_load(kind, psi.cutoff());
  std::vector<Complex> v(psi.amplitudes().begin(), psi.amplitudes().end());
  return FockVector(exp_action(make_generator(kind), psi.cutoff(), std::move(v)));
}

int auto_cutoff(const std::function<FockVector(int)>& construct, double eps) {
  if (!(eps > 0.0 && eps <= 1e-3)) {
    fail(ErrorKind::validation, "auto_cutoff: tolerance must lie in (0, 1e-3]");
  }
  std::string last_reason = "tail mass above tolerance";
  for (int n = kMinLadderCutoff; n <= kMaxCutoff; n *= 2) {
    try {
      const FockVector v = construct(n);
      if (v.tail_mass() < eps) return n;
      std::ostringstream os;
      os << "tail mass " << v.tail_mass() << " at cutoff " << n;
      last_reason = os.str();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::truncation) throw;
      last_reason = e.what();
    }
  }
  fail(ErrorKind::truncation, "parameters out of supported range: no cutoff up to " +
                                  std::to_string(kMaxCutoff) + " works (" + last_reason + ")");
}

}  // namespace subplanck
