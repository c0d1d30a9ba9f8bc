// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_JETS_HPP
#define PARAHORM_JETS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace parahorm {

/// Truncated Taylor series (a "jet") around a base point: value plus Taylor
/// coefficients up to a fixed depth. Arithmetic propagates derivatives
/// exactly, which is how coefficient time-jets and the bump-function
/// derivatives are produced without numerical differencing.
template <class T>
class TaylorJet {
 public:
  TaylorJet() = default;
  TaylorJet(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("TaylorJet: empty coefficient list");
  }

  static TaylorJet constant(T value, int depth) {
    std::vector<T> c(static_cast<std::size_t>(depth) + 1, T{});
    c[0] = value;
    return TaylorJet(std::move(c));
  }

  /// The identity jet h -> x0 + h.
  static TaylorJet variable(T x0, int depth) {
    auto j = constant(x0, depth);
    if (depth >= 1) j.c_[1] = T{1};
    return j;
  }

  int depth() const { return static_cast<int>(c_.size()) - 1; }
  const T& coeff(int q) const { return c_.at(static_cast<std::size_t>(q)); }
  T& coeff(int q) { return c_.at(static_cast<std::size_t>(q)); }
  const T& value() const { return c_[0]; }

  /// q-th derivative at the base point (q! times the Taylor coefficient).
  T derivative(int q) const {
    T f{1};
    for (int j = 2; j <= q; ++j) f *= static_cast<double>(j);
    return coeff(q) * f;
  }

  friend TaylorJet operator+(const TaylorJet& a, const TaylorJet& b) {
    auto r = a;
    for (int q = 0; q <= a.match(b); ++q) r.c_[q] += b.c_[q];
    return r;
  }
  friend TaylorJet operator-(const TaylorJet& a, const TaylorJet& b) {
    auto r = a;
    for (int q = 0; q <= a.match(b); ++q) r.c_[q] -= b.c_[q];
    return r;
  }
  friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
    const int d = a.match(b);
    std::vector<T> c(static_cast<std::size_t>(d) + 1, T{});
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j) c[i + j] += a.c_[i] * b.c_[j];
    return TaylorJet(std::move(c));
  }
  friend TaylorJet operator*(T s, const TaylorJet& a) {
    auto r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) { return a * b.reciprocal(); }

  TaylorJet operator-() const {
    auto r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  /// 1/this; requires a nonzero value at the base point.
  TaylorJet reciprocal() const {
    if (c_[0] == T{}) throw std::runtime_error("TaylorJet: reciprocal of a jet vanishing at the base point");
    std::vector<T> r(c_.size(), T{});
    r[0] = T{1} / c_[0];
    for (std::size_t q = 1; q < c_.size(); ++q) {
      T acc{};
      for (std::size_t j = 1; j <= q; ++j) acc += c_[j] * r[q - j];
      r[q] = -acc / c_[0];
    }
    return TaylorJet(std::move(r));
  }

  /// exp(this), via e' = a' e.
  TaylorJet exp() const {
    std::vector<T> e(c_.size(), T{});
    e[0] = exp_scalar(c_[0]);
    for (std::size_t q = 1; q < c_.size(); ++q) {
      T acc{};
      for (std::size_t j = 1; j <= q; ++j) acc += static_cast<double>(j) * c_[j] * e[q - j];
      e[q] = acc / static_cast<double>(q);
    }
    return TaylorJet(std::move(e));
  }

  TaylorJet pow(int k) const {
    if (k < 0) return reciprocal().pow(-k);
    auto r = constant(T{1}, depth());
    auto base = *this;
    for (int e = k; e > 0; e >>= 1) {
      if (e & 1) r = r * base;
      if (e > 1) base = base * base;
    }
    return r;
  }

 private:
  int match(const TaylorJet& b) const {
    if (c_.size() != b.c_.size()) throw std::invalid_argument("TaylorJet: depth mismatch");
    return depth();
  }
  static double exp_scalar(double x) { return std::exp(x); }
  static std::complex<double> exp_scalar(std::complex<double> x) { return std::exp(x); }

  std::vector<T> c_;
};

using RealJet = TaylorJet<double>;
using ComplexJet = TaylorJet<std::complex<double>>;

}  // namespace parahorm

#endif  // PARAHORM_JETS_HPP
