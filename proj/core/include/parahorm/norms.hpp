// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_NORMS_HPP
#define PARAHORM_NORMS_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "parahorm/field.hpp"
#include "parahorm/weights.hpp"

namespace parahorm {

/// Weight values mu(xi) over all grid modes, in linear index order.
std::vector<double> weight_table(const FrequencyGrid& grid, const WeightParams& w);

/// (sum_xi m(xi)^2 |c(xi)|^2)^{1/2} against a precomputed multiplier table.
double weighted_l2(const SpectralField& f, std::span<const double> multiplier);

/// The H^mu norm on the truncated grid. Throws std::invalid_argument on
/// NaN/Inf coefficients.
double hoermander_norm(const SpectralField& f, const WeightParams& w);
NormReport hoermander_norm_report(const SpectralField& f, const WeightParams& w);

/// Interpolation norm of the admissible pair [H^{m0}, H^{m1}]: the generating
/// operator acts diagonally as m1/m0, so the norm multiplier is
/// m0(xi) psi(m1(xi)/m0(xi)). Throws std::runtime_error if the multiplier
/// fails to be positive somewhere.
double interp_norm(const SpectralField& f, const WeightParams& m0, const WeightParams& m1,
                   const std::function<double(double)>& psi);
double interp_norm(const SpectralField& f, const WeightParams& m0, const WeightParams& m1,
                   const PsiParam& psi);
double interp_norm(const SpectralField& f, const WeightParams& m0, const WeightParams& m1,
                   const InterpParam& psi);

/// Euclidean combination of component norms (the direct-sum norm).
double l2_combine(std::span<const double> norms);
double direct_sum_norm(std::span<const std::pair<const SpectralField*, WeightParams>> components);

struct EmbeddingReport {
  bool pass = false;
  double c0 = 0.0, c1 = 0.0;   // sandwich constants over the realized rho^{1/2}
  double norm_s0 = 0.0, norm_s_phi = 0.0, norm_s1 = 0.0;
  double lower_slack = 0.0;    // norm_s_phi / (c0 norm_s0), >= 1 when passing
  double upper_slack = 0.0;    // c1 norm_s1 / norm_s_phi
};

/// Checks c0 |f|_{s0} <= |f|_{s,phi} <= c1 |f|_{s1} with the sandwich
/// constants extremized over the rho^{1/2} values realized on f's grid, which
/// makes the chain a pointwise-weight consequence.
EmbeddingReport embedding_check(const SpectralField& f, double s0, double s, double s1,
                                const PhiLogPower& phi, double gamma);

/// rho^{1/2} values realized on a grid (sorted, deduplicated); the natural
/// r-grid for sandwich_bounds in embedding checks.
std::vector<double> realized_radii(const FrequencyGrid& grid, double gamma);

}  // namespace parahorm

#endif  // PARAHORM_NORMS_HPP
