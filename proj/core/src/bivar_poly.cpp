#include "subplanck/bivar_poly.hpp"

#include <cmath>

#include "subplanck/error.hpp"

namespace subplanck {

BivarPoly::BivarPoly(int d_max) : d_max_(d_max) {
  if (d_max < 0) fail(ErrorKind::validation, "BivarPoly degree must be >= 0");
  c_.assign(static_cast<std::size_t>((d_max + 1) * (d_max + 1)), Complex{});
}

BivarPoly BivarPoly::constant(int d_max, Complex c) {
  BivarPoly p(d_max);
  p.c_[0] = c;
  return p;
}

BivarPoly BivarPoly::linear(int d_max, Complex c0, Complex cg, Complex ch) {
  BivarPoly p = constant(d_max, c0);
  if (d_max >= 1) {
    p.set(1, 0, cg);
    p.set(0, 1, ch);
  }
  return p;
}

BivarPoly::Complex BivarPoly::coefficient(int i, int j) const {
  if (i < 0 || j < 0) fail(ErrorKind::validation, "BivarPoly: negative power");
  if (i + j > d_max_) return {};
  return c_[index(i, j)];
}

void BivarPoly::set(int i, int j, Complex c) {
  if (i < 0 || j < 0 || i + j > d_max_) fail(ErrorKind::validation, "BivarPoly: term beyond degree");
  c_[index(i, j)] = c;
}

void BivarPoly::require_same_degree(const BivarPoly& o) const {
  if (o.d_max_ != d_max_) fail(ErrorKind::dimension, "BivarPoly: degree mismatch");
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
  require_same_degree(o);
  BivarPoly r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
  return r;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const { return *this + (-o); }

BivarPoly BivarPoly::operator-() const { return *this * Complex(-1.0); }

BivarPoly BivarPoly::operator*(Complex s) const {
  BivarPoly r = *this;
  for (auto& z : r.c_) z *= s;
  return r;
}

BivarPoly BivarPoly::operator+(Complex s) const {
  BivarPoly r = *this;
  r.c_[0] += s;
  return r;
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
  require_same_degree(o);
  BivarPoly r(d_max_);
  for (int i1 = 0; i1 <= d_max_; ++i1) {
    for (int j1 = 0; i1 + j1 <= d_max_; ++j1) {
      const Complex a = c_[index(i1, j1)];
      if (a == Complex{}) continue;
      for (int i2 = 0; i1 + j1 + i2 <= d_max_; ++i2) {
        for (int j2 = 0; i1 + j1 + i2 + j2 <= d_max_; ++j2) {
          r.c_[index(i1 + i2, j1 + j2)] += a * o.c_[index(i2, j2)];
        }
      }
    }
  }
  return r;
}

BivarPoly BivarPoly::conjugate() const {
  BivarPoly r(d_max_);
  for (int i = 0; i <= d_max_; ++i) {
    for (int j = 0; i + j <= d_max_; ++j) r.c_[index(j, i)] = std::conj(c_[index(i, j)]);
  }
  return r;
}

BivarPoly BivarPoly::exp() const {
  const Complex c0 = c_[0];
  BivarPoly q = *this;
  q.c_[0] = 0.0;
  // q has no constant term, so q^k only reaches degree >= k and the series stops at d_max.
  BivarPoly sum = constant(d_max_, 1.0);
  BivarPoly term = sum;
  for (int k = 1; k <= d_max_; ++k) {
    term = term * q * Complex(1.0 / k);
    sum = sum + term;
  }
  const Complex scale = std::exp(c0);
  if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
    fail(ErrorKind::validation, "BivarPoly::exp: nonfinite constant term");
  }
  return sum * scale;
}

BivarPoly::Complex BivarPoly::operator()(Complex g, Complex h) const {
  Complex s{};
  Complex gi = 1.0;
  for (int i = 0; i <= d_max_; ++i, gi *= g) {
    Complex hj = 1.0;
    for (int j = 0; i + j <= d_max_; ++j, hj *= h) s += c_[index(i, j)] * gi * hj;
  }
  return s;
}

}  // namespace subplanck
