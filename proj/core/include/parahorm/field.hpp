// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_FIELD_HPP
#define PARAHORM_FIELD_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "parahorm/grid.hpp"

namespace parahorm {

using cplx = std::complex<double>;

/// A function on a model torus represented directly by its Fourier
/// coefficients on a truncated frequency grid.
class SpectralField {
 public:
  explicit SpectralField(FrequencyGrid grid);
  SpectralField(FrequencyGrid grid, std::vector<cplx> coefficients);

  const FrequencyGrid& grid() const { return grid_; }
  std::span<const cplx> coefficients() const { return coef_; }
  std::span<cplx> coefficients() { return coef_; }

  cplx& at(std::span<const int> modes) { return coef_[grid_.encode(modes)]; }
  const cplx& at(std::span<const int> modes) const { return coef_[grid_.encode(modes)]; }
  cplx& operator[](std::size_t i) { return coef_[i]; }
  const cplx& operator[](std::size_t i) const { return coef_[i]; }

  bool is_zero() const;
  bool all_finite() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx s);

  /// Pointwise evaluation sum_xi c(xi) e^{i xi . x}; fine at desk scale.
  cplx evaluate(std::span<const double> x) const;

 private:
  FrequencyGrid grid_;
  std::vector<cplx> coef_;
};

/// Seeded pseudo-random field with |coef| ~ rho^{-decay/2} and uniform
/// phases; Box-Muller over mt19937 so the draw is identical on every
/// platform.
SpectralField random_field(const FrequencyGrid& grid, std::uint64_t seed, double decay_order,
                           double gamma = 1.0);

struct NormReport {
  std::string space;         // label of the weight / pair
  double value = 0.0;
  std::string grid_summary;
};

}  // namespace parahorm

#endif  // PARAHORM_FIELD_HPP
