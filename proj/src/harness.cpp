#include "fracdyn/harness.hpp"

#include <cmath>
#include <random>

namespace fracdyn {

namespace {

class NoiseStream {
public:
    explicit NoiseStream(const NoiseSpec& spec) : spec_(spec), rng_(spec.seed) {}

    void perturb(Eigen::VectorXd& x) {
        for (Eigen::Index i = 0; i < x.size(); ++i)
            x(i) += spec_.level * std::abs(x(i)) * normal_(rng_);
    }

    void perturb(std::vector<Eigen::VectorXd>& states) {
        for (auto& x : states) perturb(x);
    }

private:
    NoiseSpec spec_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
};

}  // namespace

Trajectory add_noise(const Trajectory& trajectory, const NoiseSpec& spec) {
    if (spec.level < 0.0) throw UsageError("noise level must be nonnegative");
    Trajectory noisy = trajectory;
    if (spec.level == 0.0) return noisy;
    NoiseStream stream(spec);
    stream.perturb(noisy.states);
    return noisy;
}

ExperimentDataset add_noise(const ExperimentDataset& dataset, const NoiseSpec& spec) {
    if (spec.level < 0.0) throw UsageError("noise level must be nonnegative");
    ExperimentDataset noisy = dataset;
    if (spec.level == 0.0) return noisy;
    // Canonical field order keeps noisy datasets reproducible bit for bit.
    NoiseStream stream(spec);
    stream.perturb(noisy.x0);
    stream.perturb(noisy.x1);
    stream.perturb(noisy.x2);
    stream.perturb(noisy.xt2);
    stream.perturb(noisy.x3);
    stream.perturb(noisy.xt3);
    return noisy;
}

ErrorReport field_error_surface(const ControlAffineSystem& truth, const LearnedModel& model,
                                Eigen::Index grid_density, const Box* eval_box, Exec exec) {
    if (grid_density < 2) throw UsageError("grid density must be at least 2");
    if (!model.f_hat) throw UsageError("model has no drift expansion to evaluate");
    if (truth.state_dim() != model.n || truth.input_dim() != model.m)
        throw UsageError("truth and model dimensions do not match");

    const Box& box = eval_box ? *eval_box : truth.domain();
    const Eigen::Index n = truth.state_dim();
    const Eigen::Index m = truth.input_dim();

    Eigen::Index points = 1;
    for (Eigen::Index d = 0; d < n; ++d) points *= grid_density;

    ErrorReport report;
    report.grid.resize(points, n);
    report.f_truth.resize(points, n);
    report.f_estimate.resize(points, n);
    report.f_abs_error.resize(points, n);
    report.g_truth.resize(points, n * m);
    report.g_estimate.resize(points, n * m);
    report.g_abs_error.resize(points, n * m);

    const BasisExpansion f_hat = *model.f_hat;
    parallel_for(static_cast<std::size_t>(points), exec, [&](std::size_t p) {
        Eigen::VectorXd x(n);
        Eigen::Index rest = static_cast<Eigen::Index>(p);
        for (Eigen::Index d = 0; d < n; ++d) {
            const Eigen::Index cell = rest % grid_density;
            rest /= grid_density;
            x(d) = box.lo(d) + (box.hi(d) - box.lo(d)) * static_cast<double>(cell) /
                                   static_cast<double>(grid_density - 1);
        }
        const Eigen::VectorXd ft = truth.drift(x);
        const Eigen::VectorXd fe = f_hat.eval(x);
        const Eigen::MatrixXd gt = truth.control(x);
        const Eigen::MatrixXd ge = model.g_hat.eval(x);

        const Eigen::Index row = static_cast<Eigen::Index>(p);
        report.grid.row(row) = x.transpose();
        report.f_truth.row(row) = ft.transpose();
        report.f_estimate.row(row) = fe.transpose();
        report.f_abs_error.row(row) = (ft - fe).cwiseAbs().transpose();
        for (Eigen::Index l = 0; l < m; ++l) {
            for (Eigen::Index r = 0; r < n; ++r) {
                const Eigen::Index col = l * n + r;
                report.g_truth(row, col) = gt(r, l);
                report.g_estimate(row, col) = ge(r, l);
                report.g_abs_error(row, col) = std::abs(gt(r, l) - ge(r, l));
            }
        }
    });

    report.max_abs_error_f = report.f_abs_error.maxCoeff();
    report.mean_abs_error_f = report.f_abs_error.mean();
    report.max_abs_error_g = report.g_abs_error.maxCoeff();
    report.mean_abs_error_g = report.g_abs_error.mean();
    report.max_abs_error = std::max(report.max_abs_error_f, report.max_abs_error_g);
    const double total = static_cast<double>(report.f_abs_error.size() + report.g_abs_error.size());
    report.mean_abs_error =
        (report.f_abs_error.sum() + report.g_abs_error.sum()) / total;
    return report;
}

namespace {

struct RunResult {
    Trajectory trajectory;
    bool diverged = false;
};

RunResult try_simulate(const ControlAffineSystem& system, const Eigen::VectorXd& x0,
                       std::span<const Eigen::VectorXd> inputs, const SimulationConfig& config) {
    RunResult result;
    try {
        result.trajectory = simulate(system, x0, inputs, config);
    } catch (const SimulationDiverged& e) {
        result.diverged = true;
        // Keep the prefix that stayed finite.
        const Eigen::Index steps = static_cast<Eigen::Index>(e.step()) - 1;
        if (steps >= 1) {
            std::vector<Eigen::VectorXd> prefix(inputs.begin(), inputs.begin() + steps);
            SimulationConfig cfg = config;
            cfg.horizon = steps;
            result.trajectory = simulate(system, x0, prefix, cfg);
        } else {
            result.trajectory.states.push_back(x0);
            result.trajectory.time_kind = system.time_kind();
            result.trajectory.h = config.h;
        }
    }
    return result;
}

}  // namespace

ComparisonReport compare_responses(const ControlAffineSystem& truth,
                                   const LearnedModel& fractional_model,
                                   const LearnedModel& integer_model, const Eigen::VectorXd& x0,
                                   std::span<const Eigen::VectorXd> inputs,
                                   const SimulationConfig& config) {
    if (fractional_model.n != truth.state_dim() || integer_model.n != truth.state_dim() ||
        fractional_model.time_kind != truth.time_kind() ||
        integer_model.time_kind != truth.time_kind())
        throw UsageError("comparison requires matching dimensions and time kind");

    const ControlAffineSystem frac_sys = fractional_model.to_system();
    const ControlAffineSystem int_sys = integer_model.to_system();

    RunResult rt = try_simulate(truth, x0, inputs, config);
    RunResult rf = try_simulate(frac_sys, x0, inputs, config);
    RunResult ri = try_simulate(int_sys, x0, inputs, config);

    ComparisonReport report;
    report.truth = std::move(rt.trajectory);
    report.fractional = std::move(rf.trajectory);
    report.integer = std::move(ri.trajectory);
    report.truth_diverged = rt.diverged;
    report.fractional_diverged = rf.diverged;
    report.integer_diverged = ri.diverged;

    const std::size_t common = std::min({report.truth.states.size(),
                                         report.fractional.states.size(),
                                         report.integer.states.size()});
    report.common_steps = static_cast<Eigen::Index>(common) - 1;
    for (std::size_t k = 0; k < common; ++k) {
        const double df =
            (report.fractional.states[k] - report.truth.states[k]).lpNorm<Eigen::Infinity>();
        const double di =
            (report.integer.states[k] - report.truth.states[k]).lpNorm<Eigen::Infinity>();
        report.dev_fractional.push_back(df);
        report.dev_integer.push_back(di);
        report.max_dev_fractional = std::max(report.max_dev_fractional, df);
        report.max_dev_integer = std::max(report.max_dev_integer, di);
    }
    return report;
}

}  // namespace fracdyn
