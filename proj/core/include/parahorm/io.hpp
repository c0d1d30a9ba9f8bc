// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_IO_HPP
#define PARAHORM_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "parahorm/compat.hpp"
#include "parahorm/model.hpp"

namespace parahorm {

// Problem files:
//   { "n": 2, "b": 1, "m": 1, "tau": 1.0,
//     "interior_terms": [ { "alpha": [0,0], "beta": 1, "coeff": {"const": 1} } ],
//     "boundary": [ { "mj": 0, "terms": [ ... ] } ],
//     "geometry": { "type": "strip", "length_x1": 1.0 } }
// Coefficients: {"const": re} | {"const": [re, im]} |
//   {"expr": "poly_t"|"exp_t"|"cos_x1", "params": {...}}; boundary terms may
// carry "coeff_upper" for the second component.
ParabolicProblem load_problem(const std::filesystem::path& json_path);
void save_problem(const ParabolicProblem& P, const std::filesystem::path& json_path);

// Fields: a JSON descriptor plus a binary-free CSV of coefficients
// (n_1,...,n_k, re, im per row).
void save_field(const SpectralField& f, const std::filesystem::path& json_path);
SpectralField load_field(const std::filesystem::path& json_path);

// Trace vectors reuse the field CSV format with a leading k column.
void save_trace_vector(const TraceVector& v, const std::filesystem::path& json_path);
TraceVector load_trace_vector(const std::filesystem::path& json_path);

// Data tuples: a JSON manifest referencing per-component field files.
void save_tuple(const DataTuple& data, const std::filesystem::path& json_path);
DataTuple load_tuple(const std::filesystem::path& json_path);

std::string norm_report_json(const NormReport& report);
std::string petrovskii_report_json(const PetrovskiiReport& report);
std::string covering_report_json(const CoveringSweepResult& report);
std::string ratio_report_json(const RatioReport& report);
std::string local_reg_report_json(const LocalRegularityReport& report);

/// Residual rows as CSV: j,k,side,residual,tol,pass.
std::string residuals_csv(std::span<const ResidualRow> rows);
/// Plot-ready ratio series: s,phi,level,member,ratio.
std::string ratio_series_csv(const RatioReport& report);
/// Local-regularity levels: level,x1_cutoff,x2_points,t_steps,local,global.
std::string local_reg_csv(const LocalRegularityReport& report);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace parahorm

#endif  // PARAHORM_IO_HPP
