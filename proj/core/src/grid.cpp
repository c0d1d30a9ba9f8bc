// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include "parahorm/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace parahorm {

FrequencyGrid::FrequencyGrid(std::vector<double> periods, std::vector<int> cutoffs)
    : period_(std::move(periods)), cutoff_(std::move(cutoffs)) {
  if (period_.size() != cutoff_.size() || period_.empty())
    throw std::invalid_argument("FrequencyGrid: periods and cutoffs must match and be nonempty");
  for (double L : period_)
    if (!(L > 0.0)) throw std::invalid_argument("FrequencyGrid: periods must be positive");
  for (int N : cutoff_)
    if (N < 1) throw std::invalid_argument("FrequencyGrid: cutoffs must be positive");
  stride_.assign(cutoff_.size(), 1);
  count_ = 1;
  for (int a = dim() - 1; a >= 0; --a) {
    stride_[a] = count_;
    count_ *= static_cast<std::size_t>(modes_on_axis(a));
  }
}

FrequencyGrid FrequencyGrid::line(int cutoff, double period) {
  return FrequencyGrid({period}, {cutoff});
}

double FrequencyGrid::frequency(int axis, int mode) const {
  return 2.0 * std::numbers::pi * mode / period_.at(axis);
}

void FrequencyGrid::decode(std::size_t index, std::span<int> modes) const {
  if (modes.size() != static_cast<std::size_t>(dim()))
    throw std::invalid_argument("FrequencyGrid::decode: bad span size");
  for (int a = 0; a < dim(); ++a) {
    const std::size_t q = index / stride_[a];
    modes[a] = static_cast<int>(q % modes_on_axis(a)) - cutoff_[a];
  }
}

std::size_t FrequencyGrid::encode(std::span<const int> modes) const {
  if (!contains(modes)) throw std::out_of_range("FrequencyGrid::encode: mode outside grid");
  std::size_t idx = 0;
  for (int a = 0; a < dim(); ++a) idx += stride_[a] * static_cast<std::size_t>(modes[a] + cutoff_[a]);
  return idx;
}

bool FrequencyGrid::contains(std::span<const int> modes) const {
  if (modes.size() != static_cast<std::size_t>(dim())) return false;
  for (int a = 0; a < dim(); ++a)
    if (modes[a] < -cutoff_[a] || modes[a] > cutoff_[a]) return false;
  return true;
}

void FrequencyGrid::split_frequencies(std::size_t index, double& xi_prime_sq, double& xi_last) const {
  xi_prime_sq = 0.0;
  for (int a = 0; a < dim(); ++a) {
    const std::size_t q = index / stride_[a];
    const int n = static_cast<int>(q % modes_on_axis(a)) - cutoff_[a];
    const double xi = frequency(a, n);
    if (a + 1 == dim())
      xi_last = xi;
    else
      xi_prime_sq += xi * xi;
  }
}

FrequencyGrid FrequencyGrid::doubled() const {
  std::vector<int> c = cutoff_;
  for (int& N : c) N *= 2;
  return FrequencyGrid(period_, c);
}

FrequencyGrid FrequencyGrid::without_axis(int axis) const {
  if (dim() < 2) throw std::invalid_argument("FrequencyGrid::without_axis: would leave an empty grid");
  std::vector<double> p;
  std::vector<int> c;
  for (int a = 0; a < dim(); ++a) {
    if (a == axis) continue;
    p.push_back(period_[a]);
    c.push_back(cutoff_[a]);
  }
  return FrequencyGrid(std::move(p), std::move(c));
}

std::string FrequencyGrid::summary() const {
  std::ostringstream os;
  os << "grid[";
  for (int a = 0; a < dim(); ++a) os << (a ? " x " : "") << "N=" << cutoff_[a] << "(L=" << period_[a] << ")";
  os << "]";
  return os.str();
}

}  // namespace parahorm
