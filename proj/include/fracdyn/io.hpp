#pragma once

#include <filesystem>
#include <string>

#include "fracdyn/harness.hpp"
#include "fracdyn/learn.hpp"
#include "fracdyn/simulate.hpp"

namespace fracdyn::io {

/// Shortest decimal representation that parses back to the same double
/// (never more than 17 significant digits).
std::string format_double(double value);
double parse_double(const std::string& text);

/// Writes content to path atomically (temp file in the same directory, then
/// rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Trajectories: CSV columns k, t, x1..xn, u1..um (the final row has no
// input), and a JSON document with the same payload.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);
Trajectory read_trajectory_csv(const std::filesystem::path& path);
void write_trajectory_json(const std::filesystem::path& path, const Trajectory& trajectory);
Trajectory read_trajectory_json(const std::filesystem::path& path);

// Datasets: a directory of CSV files (x0, u0, u1, x1, x2, xt2, plus u2, x3,
// xt3 for discrete time) and a meta.json.
void write_dataset(const std::filesystem::path& dir, const ExperimentDataset& dataset);
ExperimentDataset read_dataset(const std::filesystem::path& dir);

void write_model_json(const std::filesystem::path& path, const LearnedModel& model);
LearnedModel read_model_json(const std::filesystem::path& path);

/// Error surfaces: one CSV row per grid point and field component
/// (x..., component, truth, estimate, abs_error) plus a JSON summary.
void write_error_report(const std::filesystem::path& csv_path,
                        const std::filesystem::path& summary_path, const ErrorReport& report);

/// Comparison: CSV rows k, t, x_truth..., x_frac..., x_int..., dev_frac,
/// dev_int plus a JSON summary.
void write_comparison_report(const std::filesystem::path& csv_path,
                             const std::filesystem::path& summary_path,
                             const ComparisonReport& report);

}  // namespace fracdyn::io
