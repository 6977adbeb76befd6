#pragma once

#include <complex>
#include <vector>

namespace subplanck {

/// Polynomial in two independent variables (g, h), truncated at total degree
/// d_max. Used with g = gamma and h = gamma*, so coefficient (i, j) times
/// i! j! is the mixed derivative d^i/dgamma^i d^j/dgamma*^j at the origin.
class BivarPoly {
 public:
  using Complex = std::complex<double>;

  explicit BivarPoly(int d_max);
  static BivarPoly constant(int d_max, Complex c);
  /// c0 + cg * g + ch * h
  static BivarPoly linear(int d_max, Complex c0, Complex cg, Complex ch);

  int degree() const noexcept { return d_max_; }
  Complex coefficient(int i, int j) const;
  void set(int i, int j, Complex c);

  BivarPoly operator+(const BivarPoly& o) const;
  BivarPoly operator-(const BivarPoly& o) const;
  BivarPoly operator*(const BivarPoly& o) const;
  BivarPoly operator*(Complex s) const;
  BivarPoly operator+(Complex s) const;
  BivarPoly operator-() const;

  /// Formal conjugate: conjugated coefficients with g and h swapped.
  BivarPoly conjugate() const;

  /// exp(p) to degree d_max: e^{p(0)} times the series of exp(p - p(0)).
  BivarPoly exp() const;

  /// Evaluation at (g, h).
  Complex operator()(Complex g, Complex h) const;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i * (d_max_ + 1) + j);
  }
  void require_same_degree(const BivarPoly& o) const;

  int d_max_;
  std::vector<Complex> c_;
};

inline BivarPoly operator*(BivarPoly::Complex s, const BivarPoly& p) { return p * s; }

}  // namespace subplanck
