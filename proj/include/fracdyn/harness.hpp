#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fracdyn/learn.hpp"
#include "fracdyn/simulate.hpp"
#include "fracdyn/systems.hpp"

namespace fracdyn {

/// Measurement-noise model: each recorded state entry x is replaced by
/// x + level * |x| * v with v ~ N(0, 1) from the seeded stream. Inputs are
/// never perturbed, and the noise is applied to recordings only, not inside
/// the state propagation.
struct NoiseSpec {
    double level = 0.05;
    std::uint64_t seed = 0;
};

Trajectory add_noise(const Trajectory& trajectory, const NoiseSpec& spec);
ExperimentDataset add_noise(const ExperimentDataset& dataset, const NoiseSpec& spec);

/// Pointwise field errors of a learned model against the ground truth over a
/// uniform grid.
struct ErrorReport {
    Eigen::MatrixXd grid;         // P x n query points
    Eigen::MatrixXd f_truth;      // P x n
    Eigen::MatrixXd f_estimate;   // P x n
    Eigen::MatrixXd f_abs_error;  // P x n
    Eigen::MatrixXd g_truth;      // P x (n*m), column-major field entries g(r,l)
    Eigen::MatrixXd g_estimate;
    Eigen::MatrixXd g_abs_error;

    double max_abs_error_f = 0.0;
    double mean_abs_error_f = 0.0;
    double max_abs_error_g = 0.0;
    double mean_abs_error_g = 0.0;
    double max_abs_error = 0.0;
    double mean_abs_error = 0.0;
};

/// Evaluates |truth - estimate| for every drift and control component on a
/// uniform grid with grid_density points per dimension. The evaluation box
/// defaults to the system domain; pass eval_box to restrict it.
ErrorReport field_error_surface(const ControlAffineSystem& truth, const LearnedModel& model,
                                Eigen::Index grid_density, const Box* eval_box = nullptr,
                                Exec exec = Exec::openmp);

/// Trajectories of the ground truth and of the two learned models from a
/// shared initial condition and input sequence, with per-step deviations.
struct ComparisonReport {
    Trajectory truth;
    Trajectory fractional;
    Trajectory integer;
    std::vector<double> dev_fractional;  // per-step max-norm deviation
    std::vector<double> dev_integer;
    double max_dev_fractional = 0.0;
    double max_dev_integer = 0.0;
    bool truth_diverged = false;
    bool fractional_diverged = false;
    bool integer_diverged = false;
    Eigen::Index common_steps = 0;  // comparison truncated here if a run diverged
};

ComparisonReport compare_responses(const ControlAffineSystem& truth,
                                   const LearnedModel& fractional_model,
                                   const LearnedModel& integer_model, const Eigen::VectorXd& x0,
                                   std::span<const Eigen::VectorXd> inputs,
                                   const SimulationConfig& config);

}  // namespace fracdyn
