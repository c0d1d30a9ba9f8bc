// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include "parahorm/field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace parahorm {

SpectralField::SpectralField(FrequencyGrid grid)
    : grid_(std::move(grid)), coef_(grid_.mode_count(), cplx{0.0, 0.0}) {}

SpectralField::SpectralField(FrequencyGrid grid, std::vector<cplx> coefficients)
    : grid_(std::move(grid)), coef_(std::move(coefficients)) {
  if (coef_.size() != grid_.mode_count())
    throw std::invalid_argument("SpectralField: coefficient count does not match the grid");
}

bool SpectralField::is_zero() const {
  for (const cplx& c : coef_)
    if (c != cplx{0.0, 0.0}) return false;
  return true;
}

bool SpectralField::all_finite() const {
  for (const cplx& c : coef_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (!(grid_ == o.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (!(grid_ == o.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
  for (cplx& c : coef_) c *= s;
  return *this;
}

cplx SpectralField::evaluate(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(grid_.dim()))
    throw std::invalid_argument("SpectralField::evaluate: bad point dimension");
  cplx acc{0.0, 0.0};
  std::vector<int> modes(grid_.dim());
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == cplx{0.0, 0.0}) continue;
    grid_.decode(i, modes);
    double phase = 0.0;
    for (int a = 0; a < grid_.dim(); ++a) phase += grid_.frequency(a, modes[a]) * x[a];
    acc += coef_[i] * std::polar(1.0, phase);
  }
  return acc;
}

SpectralField random_field(const FrequencyGrid& grid, std::uint64_t seed, double decay_order,
                           double gamma) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    // (0,1], avoiding log(0) below
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  };
  SpectralField f(grid);
  for (std::size_t i = 0; i < grid.mode_count(); ++i) {
    double xps = 0.0, xl = 0.0;
    grid.split_frequencies(i, xps, xl);
    const double rho = 1.0 + xps + std::pow(std::abs(xl), 2.0 * gamma);
    const double amp = std::pow(rho, -0.5 * decay_order);
    // Box-Muller; portable across standard libraries.
    const double u1 = uniform(), u2 = uniform();
    const double g = std::sqrt(-2.0 * std::log(u1));
    f[i] = amp * cplx{g * std::cos(2.0 * std::numbers::pi * u2),
                      g * std::sin(2.0 * std::numbers::pi * u2)};
  }
  return f;
}

}  // namespace parahorm
