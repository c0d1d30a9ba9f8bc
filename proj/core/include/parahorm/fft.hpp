// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_FFT_HPP
#define PARAHORM_FFT_HPP

#include <span>
#include <vector>

#include "parahorm/field.hpp"

namespace parahorm {

// Collocation grids pair each frequency axis (cutoff N, period L) with the
// 2N+1 uniform points x_j = L j / (2N+1); with that sampling the truncated
// Fourier representation is exactly invertible.

/// Coefficients -> samples on the collocation grid (row-major like the grid).
std::vector<cplx> to_collocation(const SpectralField& f);

/// Samples on the collocation grid -> coefficients.
SpectralField from_collocation(const FrequencyGrid& grid, std::span<const cplx> samples);

/// Unnormalized in-place DFT of a row-major multi-dimensional array in FFTW
/// index layout; sign = -1 forward, +1 backward.
void dft_inplace(std::span<const int> sizes, std::vector<cplx>& data, int sign);

/// Batch of contiguous 1-D DFTs: data holds `rows` rows of length `size`.
void dft_rows_inplace(int rows, int size, std::vector<cplx>& data, int sign);

}  // namespace parahorm

#endif  // PARAHORM_FFT_HPP
