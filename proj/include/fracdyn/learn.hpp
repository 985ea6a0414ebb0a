#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fracdyn/basis.hpp"
#include "fracdyn/parallel.hpp"
#include "fracdyn/simulate.hpp"
#include "fracdyn/systems.hpp"

namespace fracdyn {

/// Distribution of the random excitation inputs (uniform on [lo, hi]).
struct InputLaw {
    double lo = -1.0;
    double hi = 1.0;
    std::uint64_t seed = 0;
};

/// Experiment design: M initial conditions sampled uniformly from the system
/// domain, N+1 input trials per initial condition (trial j = 0 is the
/// reference the others are differenced against), excitation on one input
/// channel at a time.
struct ExperimentPlan {
    Eigen::Index M = 20;
    Eigen::Index N = 10;
    InputLaw input_law;
    Eigen::Index active_channel = 0;

    void validate(const ControlAffineSystem& system) const;
};

/// Recorded input-output experiments. Per-trial quantities are indexed by
/// (initial condition i, trial j) with j = 0..N; the tilde entries come from
/// memory-reset reruns. x3/xt3/u2 are populated for discrete-time systems
/// only.
struct ExperimentDataset {
    TimeKind time_kind = TimeKind::continuous;
    double h = 0.1;
    Eigen::Index M = 0;
    Eigen::Index N = 0;
    Eigen::Index n = 0;
    Eigen::Index m = 0;
    Eigen::Index active_channel = 0;
    std::uint64_t seed = 0;
    Box domain;

    std::vector<Eigen::VectorXd> x0;  // M entries
    std::vector<Eigen::VectorXd> u0, u1, u2;
    std::vector<Eigen::VectorXd> x1, x2, x3;
    std::vector<Eigen::VectorXd> xt2, xt3;

    std::size_t idx(Eigen::Index i, Eigen::Index j) const {
        return static_cast<std::size_t>(i * (N + 1) + j);
    }
    Eigen::Index trials() const { return M * (N + 1); }
};

ExperimentDataset generate_dataset_continuous(const ControlAffineSystem& system,
                                              const ExperimentPlan& plan,
                                              const SimulationConfig& config,
                                              Exec exec = Exec::openmp);

ExperimentDataset generate_dataset_discrete(const ControlAffineSystem& system,
                                            const ExperimentPlan& plan,
                                            Exec exec = Exec::openmp);

/// Per-component report of the order estimation.
struct OrderReport {
    Eigen::VectorXd raw;            // least-squares estimates before clamping
    std::vector<long> samples_used; // per component, after the excitation floor
    bool discrete = false;
    // Discrete only: both quadratic roots and their cubic-identity residuals.
    Eigen::VectorXd root_plus, root_minus;
    Eigen::VectorXd residual_plus, residual_minus;
};

struct OrderEstimate {
    FractionalOrderVector alpha_hat;
    OrderReport report;
};

/// Estimates the order of a continuous-time system from the memory-reset
/// discrepancy x(2) - x~(2) = (I + psi(alpha,1)) (x(0) - x(1)): per component
/// a least-squares slope through the origin over all (i, j) samples.
OrderEstimate estimate_order_continuous(const ExperimentDataset& dataset);

/// Discrete-time order estimation: least squares for c = alpha - alpha^2 from
/// 2 (x(2) - x~(2)) against x(0), then root selection between
/// (1 +- sqrt(1-4c))/2 by the aggregate residual of the third-step identity.
/// Samples are weighted by the inverse of their measurement magnitude so that
/// trials with large transients do not dominate under relative-amplitude
/// noise.
OrderEstimate estimate_order_discrete(const ExperimentDataset& dataset);

struct ControlFit {
    Eigen::VectorXd coefficients;  // stacked beta blocks, length n*L
    double residual = 0.0;         // ||Y - Phi B||
    double condition_estimate = 0.0;
    Eigen::Index rows = 0;
};

/// Least-squares fit of one control-field column from the input-differenced
/// responses, solved by Householder QR.
ControlFit fit_control_field(const ExperimentDataset& dataset, const BasisSpec& basis,
                             const FractionalOrderVector& alpha_hat,
                             Eigen::Index channel);

/// Reference normal-equations solve (hand-rolled Cholesky); kept as an
/// independent route for checking the QR path.
Eigen::VectorXd solve_normal_equations(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& Y);

/// Assembles the stacked regression system for one channel (exposed for
/// diagnostics and tests).
void build_regression(const ExperimentDataset& dataset, const BasisSpec& basis,
                      const FractionalOrderVector& alpha_hat, Eigen::Index channel,
                      Eigen::MatrixXd& Phi, Eigen::VectorXd& Y);

/// Estimated control field: one coefficient block per input channel.
struct ControlFieldEstimate {
    BasisSpec basis;
    std::vector<Eigen::VectorXd> coefficients;  // m entries, each n*L

    Eigen::Index channels() const { return static_cast<Eigen::Index>(coefficients.size()); }
    /// g_hat(x) as an n x m matrix.
    Eigen::MatrixXd eval(const Eigen::VectorXd& x) const;
};

struct DriftFit {
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> samples;  // (x0, f_hat(x0))
    std::optional<BasisExpansion> expansion;
    double fit_residual = 0.0;
};

/// Recovers drift samples at the experiment initial conditions once g_hat and
/// alpha_hat are known, averaging over trials j = 1..N; optionally fits a
/// basis expansion to the samples for evaluation at arbitrary points.
DriftFit fit_drift_field(const ExperimentDataset& dataset, const ControlFieldEstimate& g_hat,
                         const FractionalOrderVector& alpha_hat, bool fit_expansion = true);

struct ModelDiagnostics {
    std::vector<double> g_residual;
    std::vector<double> g_condition;
    double f_fit_residual = 0.0;
    OrderReport order;
};

/// Result of the learning pipeline: estimated order, control-field expansion
/// per channel, drift samples and (optionally) drift expansion.
struct LearnedModel {
    TimeKind time_kind = TimeKind::continuous;
    double h = 0.1;
    Eigen::Index n = 0;
    Eigen::Index m = 0;
    Box domain;
    FractionalOrderVector alpha_hat{{1.0}};
    ControlFieldEstimate g_hat;
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> f_samples;
    std::optional<BasisExpansion> f_hat;
    ModelDiagnostics diagnostics;

    /// Wraps the learned fields as a simulatable system (requires f_hat).
    ControlAffineSystem to_system() const;
};

/// Runs the experiment-design stage: one dataset per input channel, all other
/// channels forced to zero. Channel k derives its input seed from
/// plan.input_law.seed and k, so datasets are reproducible independently.
std::vector<ExperimentDataset> design_experiments(const ControlAffineSystem& system,
                                                  const ExperimentPlan& plan,
                                                  const SimulationConfig& config,
                                                  Exec exec = Exec::openmp);

/// Inference stage: order estimation from the first channel's dataset,
/// control-field regression per channel, then drift recovery.
LearnedModel learn_dynamics(const std::vector<ExperimentDataset>& datasets,
                            const BasisSpec& basis);

/// Same fits with the order forced to one (memoryless baseline).
LearnedModel integer_order_baseline(const std::vector<ExperimentDataset>& datasets,
                                    const BasisSpec& basis);

}  // namespace fracdyn
