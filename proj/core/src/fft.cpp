// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include "parahorm/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace parahorm {

namespace {
std::mutex fftw_plan_mutex;  // FFTW planning is not thread-safe
}

void dft_inplace(std::span<const int> sizes, std::vector<cplx>& data, int sign) {
  std::size_t total = 1;
  for (int s : sizes) total *= static_cast<std::size_t>(s);
  if (total != data.size()) throw std::invalid_argument("dft_inplace: size mismatch");
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_dft(static_cast<int>(sizes.size()), sizes.data(),
                         reinterpret_cast<fftw_complex*>(data.data()),
                         reinterpret_cast<fftw_complex*>(data.data()),
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("dft_inplace: fftw plan failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }
}

void dft_rows_inplace(int rows, int size, std::vector<cplx>& data, int sign) {
  if (data.size() != static_cast<std::size_t>(rows) * size)
    throw std::invalid_argument("dft_rows_inplace: size mismatch");
  if (rows == 0) return;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_many_dft(1, &size, rows, reinterpret_cast<fftw_complex*>(data.data()),
                              nullptr, 1, size, reinterpret_cast<fftw_complex*>(data.data()),
                              nullptr, 1, size, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                              FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("dft_rows_inplace: fftw plan failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }
}

namespace {

// Map between the grid's [-N..N] linear layout and FFTW's wraparound layout.
std::vector<cplx> reorder(const FrequencyGrid& grid, std::span<const cplx> in, bool to_fftw) {
  const int dim = grid.dim();
  std::vector<int> modes(dim);
  std::vector<cplx> out(in.size());
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    grid.decode(idx, modes);
    std::size_t fidx = 0;
    for (int a = 0; a < dim; ++a) {
      const int M = grid.modes_on_axis(a);
      const int wrapped = (modes[a] + M) % M;
      fidx = fidx * static_cast<std::size_t>(M) + static_cast<std::size_t>(wrapped);
    }
    if (to_fftw)
      out[fidx] = in[idx];
    else
      out[idx] = in[fidx];
  }
  return out;
}

std::vector<int> fftw_sizes(const FrequencyGrid& grid) {
  std::vector<int> s(grid.dim());
  for (int a = 0; a < grid.dim(); ++a) s[a] = grid.modes_on_axis(a);
  return s;
}

}  // namespace

std::vector<cplx> to_collocation(const SpectralField& f) {
  auto data = reorder(f.grid(), f.coefficients(), /*to_fftw=*/true);
  dft_inplace(fftw_sizes(f.grid()), data, +1);
  // FFTW layout index j corresponds to x_j = L j / M axis-wise, which is the
  // row-major collocation order; no reorder back needed.
  return data;
}

SpectralField from_collocation(const FrequencyGrid& grid, std::span<const cplx> samples) {
  if (samples.size() != grid.mode_count())
    throw std::invalid_argument("from_collocation: sample count mismatch");
  std::vector<cplx> data(samples.begin(), samples.end());
  dft_inplace(fftw_sizes(grid), data, -1);
  const double scale = 1.0 / static_cast<double>(grid.mode_count());
  for (cplx& c : data) c *= scale;
  return SpectralField(grid, reorder(grid, data, /*to_fftw=*/false));
}

}  // namespace parahorm
