#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace subplanck {

using Complex = std::complex<double>;

/// Indices n > kGuardBandStart * N form the guard band whose weight is tracked
/// as tail mass.
inline constexpr double kGuardBandStart = 0.9;
/// Unitarity of D and S is only promised on indices below this fraction of N.
inline constexpr double kTrustedBlockFraction = 0.8;
/// Generators whose photon load exceeds this fraction of N are rejected.
inline constexpr double kGeneratorLoadFraction = 0.25;
inline constexpr int kMinLadderCutoff = 32;
inline constexpr int kMaxCutoff = 4096;
/// Default truncation tolerance: states with tail mass at or above it are flagged.
inline constexpr double kDefaultTailTolerance = 1e-10;

/// Pure single-mode state truncated to number states 0..N.
///
/// Values are immutable; every operation returns a new vector. The tail mass is
/// the fraction of the squared norm sitting in the guard band and is computed
/// on construction, so any operator application refreshes it.
class FockVector {
 public:
  /// Zero vector with the given cutoff.
  explicit FockVector(int cutoff);
  explicit FockVector(std::vector<Complex> amplitudes);

  static FockVector number_state(int n, int cutoff);
  static FockVector vacuum(int cutoff) { return number_state(0, cutoff); }

  int cutoff() const noexcept { return static_cast<int>(amps_.size()) - 1; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t n) const { return amps_[n]; }

  double norm_squared() const noexcept;
  double norm() const noexcept;
  double tail_mass() const noexcept { return tail_mass_; }
  bool flagged(double tolerance = kDefaultTailTolerance) const noexcept {
    return !(tail_mass_ < tolerance);
  }

  /// Zero-pads or truncates to a new cutoff.
  FockVector resized(int cutoff) const;

  friend FockVector operator+(const FockVector& a, const FockVector& b);
  friend FockVector operator-(const FockVector& a, const FockVector& b);
  friend FockVector operator*(Complex s, const FockVector& v);

 private:
  std::vector<Complex> amps_;
  double tail_mass_ = 0.0;
};

/// Index of the first guard-band level for a cutoff.
int guard_band_begin(int cutoff) noexcept;

enum class OperatorTag { annihilate, create, number, displace, squeeze, parity };

/// Operator selector with its parameters. Squeeze follows
/// S[r e^{i phi}] = exp((r/2)(e^{-i phi} a^2 - e^{i phi} a^dag^2)).
struct OperatorKind {
  OperatorTag tag = OperatorTag::number;
  Complex alpha{};
  double r = 0.0;
  double phi = 0.0;

  static OperatorKind annihilate() { return {OperatorTag::annihilate}; }
  static OperatorKind create() { return {OperatorTag::create}; }
  static OperatorKind number() { return {OperatorTag::number}; }
  static OperatorKind parity() { return {OperatorTag::parity}; }
  static OperatorKind displace(Complex alpha) { return {OperatorTag::displace, alpha}; }
  static OperatorKind squeeze(double r, double phi = 0.0) {
    return {OperatorTag::squeeze, {}, r, phi};
  }
};

std::string describe(const OperatorKind& kind);

struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  OperatorKind label;

  int cutoff() const noexcept { return static_cast<int>(entries.rows()) - 1; }
};

/// Dense matrix of the operator in the number basis. D and S come from a
/// scaling-and-squaring exponential of the truncated generator.
OperatorMatrix build_operator(const OperatorKind& kind, int cutoff);

/// Matrix-vector product. Not renormalized.
FockVector apply(const OperatorMatrix& op, const FockVector& psi);

/// <bra|ket>, antilinear in the first argument.
Complex inner(const FockVector& bra, const FockVector& ket);

FockVector normalize(const FockVector& psi);

/// a^dag^k with the result kept at the input cutoff (top amplitudes leave the space).
FockVector raise(const FockVector& psi, int times = 1);
/// a^dag^k with the cutoff grown by k, so nothing is lost.
FockVector raise_extended(const FockVector& psi, int times = 1);
/// a^k.
FockVector lower(const FockVector& psi, int times = 1);

/// Action of exp(generator) on psi without forming the dense matrix. Uses the
/// same truncated generator as build_operator and the same load guard.
FockVector displace(const FockVector& psi, Complex alpha);
FockVector squeeze(const FockVector& psi, double r, double phi = 0.0);

/// Photon load a generator injects into the vacuum: |alpha|^2 for displacement,
/// sinh^2 r for squeezing. Throws ErrorKind::truncation when it exceeds
/// kGeneratorLoadFraction * cutoff.
void check_generator_load(const OperatorKind& kind, int cutoff);

/// Smallest cutoff on the ladder 32, 64, ..., kMaxCutoff for which construct(N)
/// succeeds and yields tail mass below eps. construct may throw
/// ErrorKind::truncation to reject a rung.
int auto_cutoff(const std::function<FockVector(int)>& construct, double eps);

}  // namespace subplanck
