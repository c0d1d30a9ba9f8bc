// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_SUMMATION_HPP
#define PARAHORM_SUMMATION_HPP

#include <cstddef>
#include <span>

namespace parahorm {

// Norm reductions use a fixed binary reduction tree, so the result is
// independent of thread count and permutation of the work, and accurate to
// O(log n) ulp.

/// Pairwise sum of a contiguous range.
double pairwise_sum(std::span<const double> x);

}  // namespace parahorm

#endif  // PARAHORM_SUMMATION_HPP
