// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_GRID_HPP
#define PARAHORM_GRID_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace parahorm {

/// Truncated frequency grid on a model torus product: axis i carries the
/// modes n in [-N_i, N_i] with frequencies 2 pi n / L_i. The last axis is the
/// time-dual coordinate xi_k of the anisotropic weight; the remaining axes
/// form xi'. Mode storage is row-major over axes.
class FrequencyGrid {
 public:
  FrequencyGrid(std::vector<double> periods, std::vector<int> cutoffs);

  static FrequencyGrid line(int cutoff, double period);

  int dim() const { return static_cast<int>(cutoff_.size()); }
  int cutoff(int axis) const { return cutoff_.at(axis); }
  double period(int axis) const { return period_.at(axis); }
  int modes_on_axis(int axis) const { return 2 * cutoff_.at(axis) + 1; }
  std::size_t mode_count() const { return count_; }

  double frequency(int axis, int mode) const;

  /// Linear index -> per-axis mode numbers.
  void decode(std::size_t index, std::span<int> modes) const;
  std::size_t encode(std::span<const int> modes) const;
  bool contains(std::span<const int> modes) const;

  /// |xi'|^2 (all axes but the last) and xi_last for the weight evaluation.
  void split_frequencies(std::size_t index, double& xi_prime_sq, double& xi_last) const;

  /// Grid with every cutoff doubled (periods kept).
  FrequencyGrid doubled() const;

  /// Sub-grid dropping one axis (used for traces: S and Gamma grids come from
  /// the Omega grid this way).
  FrequencyGrid without_axis(int axis) const;

  bool operator==(const FrequencyGrid& o) const { return period_ == o.period_ && cutoff_ == o.cutoff_; }

  std::string summary() const;

 private:
  std::vector<double> period_;
  std::vector<int> cutoff_;
  std::vector<std::size_t> stride_;
  std::size_t count_ = 0;
};

}  // namespace parahorm

#endif  // PARAHORM_GRID_HPP
