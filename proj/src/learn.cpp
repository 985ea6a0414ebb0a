#include "fracdyn/learn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace fracdyn {

namespace {

constexpr double kExcitationFloorScale = 1e-10;

// Clamp a raw estimate into the admissible order range (0, 1].
double clamp_order(double raw) { return std::clamp(raw, 1e-6, 1.0); }

FractionalOrderVector clamp_orders(const Eigen::VectorXd& raw) {
    Eigen::VectorXd out(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i) out(i) = clamp_order(raw(i));
    return FractionalOrderVector(std::move(out));
}

void check_finite(const Eigen::VectorXd& x, Eigen::Index i, Eigen::Index j) {
    if (!x.allFinite())
        throw DataError("simulation diverged for trial (i=" + std::to_string(i) +
                        ", j=" + std::to_string(j) + ")");
}

struct TrialInputs {
    std::vector<Eigen::VectorXd> u0, u1, u2;
};

// All random draws happen up front in a canonical order so that datasets are
// identical regardless of the execution schedule.
TrialInputs draw_inputs(const ControlAffineSystem& system, const ExperimentPlan& plan,
                        std::mt19937_64& rng, bool three_steps) {
    std::uniform_real_distribution<double> law(plan.input_law.lo, plan.input_law.hi);
    const Eigen::Index trials = plan.M * (plan.N + 1);
    TrialInputs inputs;
    auto draw_set = [&](std::vector<Eigen::VectorXd>& set) {
        set.resize(static_cast<std::size_t>(trials));
        for (Eigen::Index t = 0; t < trials; ++t) {
            Eigen::VectorXd u = Eigen::VectorXd::Zero(system.input_dim());
            u(plan.active_channel) = law(rng);
            set[static_cast<std::size_t>(t)] = std::move(u);
        }
    };
    draw_set(inputs.u0);
    draw_set(inputs.u1);
    if (three_steps) draw_set(inputs.u2);
    return inputs;
}

std::vector<Eigen::VectorXd> draw_initial_conditions(const ControlAffineSystem& system,
                                                     Eigen::Index M, std::mt19937_64& rng) {
    const Box& box = system.domain();
    std::vector<std::uniform_real_distribution<double>> dists;
    for (Eigen::Index d = 0; d < box.dim(); ++d) dists.emplace_back(box.lo(d), box.hi(d));
    std::vector<Eigen::VectorXd> x0(static_cast<std::size_t>(M));
    for (Eigen::Index i = 0; i < M; ++i) {
        Eigen::VectorXd x(box.dim());
        for (Eigen::Index d = 0; d < box.dim(); ++d) x(d) = dists[static_cast<std::size_t>(d)](rng);
        x0[static_cast<std::size_t>(i)] = std::move(x);
    }
    return x0;
}

ExperimentDataset make_shell(const ControlAffineSystem& system, const ExperimentPlan& plan,
                             double h, TimeKind kind) {
    ExperimentDataset ds;
    ds.time_kind = kind;
    ds.h = h;
    ds.M = plan.M;
    ds.N = plan.N;
    ds.n = system.state_dim();
    ds.m = system.input_dim();
    ds.active_channel = plan.active_channel;
    ds.seed = plan.input_law.seed;
    ds.domain = system.domain();
    const std::size_t T = static_cast<std::size_t>(ds.trials());
    ds.x1.resize(T);
    ds.x2.resize(T);
    ds.xt2.resize(T);
    if (kind == TimeKind::discrete) {
        ds.x3.resize(T);
        ds.xt3.resize(T);
    }
    return ds;
}

}  // namespace

void ExperimentPlan::validate(const ControlAffineSystem& system) const {
    if (M < 1 || N < 1) throw UsageError("experiment plan requires M >= 1 and N >= 1");
    if (active_channel < 0 || active_channel >= system.input_dim())
        throw UsageError("active channel out of range");
    if (!(input_law.lo < input_law.hi)) throw UsageError("input law requires lo < hi");
}

ExperimentDataset generate_dataset_continuous(const ControlAffineSystem& system,
                                              const ExperimentPlan& plan,
                                              const SimulationConfig& config, Exec exec) {
    if (system.time_kind() != TimeKind::continuous)
        throw UsageError("generate_dataset_continuous requires a continuous-time system");
    plan.validate(system);
    config.validate();

    std::mt19937_64 rng(plan.input_law.seed);
    ExperimentDataset ds = make_shell(system, plan, config.h, TimeKind::continuous);
    ds.x0 = draw_initial_conditions(system, plan.M, rng);
    TrialInputs inputs = draw_inputs(system, plan, rng, false);
    ds.u0 = std::move(inputs.u0);
    ds.u1 = std::move(inputs.u1);

    const MemoryCoefficients coeffs(system.alpha(), 2);
    const double h = config.h;
    parallel_for(static_cast<std::size_t>(ds.trials()), exec, [&](std::size_t t) {
        const Eigen::Index i = static_cast<Eigen::Index>(t) / (plan.N + 1);
        const Eigen::Index j = static_cast<Eigen::Index>(t) % (plan.N + 1);
        const Eigen::VectorXd& x0 = ds.x0[static_cast<std::size_t>(i)];
        const Eigen::VectorXd& u0 = ds.u0[t];
        const Eigen::VectorXd& u1 = ds.u1[t];

        std::array<Eigen::VectorXd, 2> hist{x0, x0};
        Eigen::VectorXd x1 = step_continuous(system, {hist.data(), 1}, u0, h, coeffs);
        check_finite(x1, i, j);
        hist[0] = x1;
        hist[1] = x0;
        Eigen::VectorXd x2 = step_continuous(system, {hist.data(), 2}, u1, h, coeffs);
        check_finite(x2, i, j);
        Eigen::VectorXd xt2 = step_continuous(system, {hist.data(), 1}, u1, h, coeffs);
        check_finite(xt2, i, j);

        ds.x1[t] = std::move(x1);
        ds.x2[t] = std::move(x2);
        ds.xt2[t] = std::move(xt2);
    });
    return ds;
}

ExperimentDataset generate_dataset_discrete(const ControlAffineSystem& system,
                                            const ExperimentPlan& plan, Exec exec) {
    if (system.time_kind() != TimeKind::discrete)
        throw UsageError("generate_dataset_discrete requires a discrete-time system");
    plan.validate(system);

    std::mt19937_64 rng(plan.input_law.seed);
    ExperimentDataset ds = make_shell(system, plan, 1.0, TimeKind::discrete);
    ds.x0 = draw_initial_conditions(system, plan.M, rng);
    TrialInputs inputs = draw_inputs(system, plan, rng, true);
    ds.u0 = std::move(inputs.u0);
    ds.u1 = std::move(inputs.u1);
    ds.u2 = std::move(inputs.u2);

    const MemoryCoefficients coeffs(system.alpha(), 3);
    parallel_for(static_cast<std::size_t>(ds.trials()), exec, [&](std::size_t t) {
        const Eigen::Index i = static_cast<Eigen::Index>(t) / (plan.N + 1);
        const Eigen::Index j = static_cast<Eigen::Index>(t) % (plan.N + 1);
        const Eigen::VectorXd& x0 = ds.x0[static_cast<std::size_t>(i)];

        std::array<Eigen::VectorXd, 3> hist{x0, x0, x0};
        Eigen::VectorXd x1 = step_discrete(system, {hist.data(), 1}, ds.u0[t], coeffs);
        check_finite(x1, i, j);
        hist[0] = x1;
        hist[1] = x0;
        Eigen::VectorXd x2 = step_discrete(system, {hist.data(), 2}, ds.u1[t], coeffs);
        check_finite(x2, i, j);
        hist[2] = x0;
        hist[1] = x1;
        hist[0] = x2;
        Eigen::VectorXd x3 = step_discrete(system, {hist.data(), 3}, ds.u2[t], coeffs);
        check_finite(x3, i, j);

        // Memory-reset replicas: one step from x(1) under u(1), and one step
        // from the continued x(2) under u(2).
        hist[0] = x1;
        Eigen::VectorXd xt2 = step_discrete(system, {hist.data(), 1}, ds.u1[t], coeffs);
        check_finite(xt2, i, j);
        hist[0] = x2;
        Eigen::VectorXd xt3 = step_discrete(system, {hist.data(), 1}, ds.u2[t], coeffs);
        check_finite(xt3, i, j);

        ds.x1[t] = std::move(x1);
        ds.x2[t] = std::move(x2);
        ds.x3[t] = std::move(x3);
        ds.xt2[t] = std::move(xt2);
        ds.xt3[t] = std::move(xt3);
    });
    return ds;
}

OrderEstimate estimate_order_continuous(const ExperimentDataset& ds) {
    if (ds.time_kind != TimeKind::continuous)
        throw UsageError("estimate_order_continuous requires a continuous-time dataset");
    const double floor = kExcitationFloorScale * ds.domain.diameter();

    OrderReport report;
    report.raw.resize(ds.n);
    report.samples_used.assign(static_cast<std::size_t>(ds.n), 0);
    for (Eigen::Index c = 0; c < ds.n; ++c) {
        double num = 0.0, den = 0.0;
        long count = 0;
        for (Eigen::Index i = 0; i < ds.M; ++i) {
            for (Eigen::Index j = 0; j <= ds.N; ++j) {
                const std::size_t t = ds.idx(i, j);
                const double e = ds.x0[static_cast<std::size_t>(i)](c) - ds.x1[t](c);
                if (std::abs(e) < floor) continue;
                const double d = ds.x2[t](c) - ds.xt2[t](c);
                num += d * e;
                den += e * e;
                ++count;
            }
        }
        if (count == 0)
            throw InsufficientExcitation("no usable samples for state component " +
                                         std::to_string(c));
        report.raw(c) = 1.0 - num / den;
        report.samples_used[static_cast<std::size_t>(c)] = count;
    }
    return OrderEstimate{clamp_orders(report.raw), std::move(report)};
}

OrderEstimate estimate_order_discrete(const ExperimentDataset& ds) {
    if (ds.time_kind != TimeKind::discrete)
        throw UsageError("estimate_order_discrete requires a discrete-time dataset");
    const double floor = kExcitationFloorScale * ds.domain.diameter();

    OrderReport report;
    report.discrete = true;
    report.raw.resize(ds.n);
    report.samples_used.assign(static_cast<std::size_t>(ds.n), 0);
    report.root_plus.resize(ds.n);
    report.root_minus.resize(ds.n);
    report.residual_plus.resize(ds.n);
    report.residual_minus.resize(ds.n);

    for (Eigen::Index c = 0; c < ds.n; ++c) {
        double num = 0.0, den = 0.0;
        long count = 0;
        for (Eigen::Index i = 0; i < ds.M; ++i) {
            const double xa = ds.x0[static_cast<std::size_t>(i)](c);
            if (std::abs(xa) < floor) continue;
            for (Eigen::Index j = 0; j <= ds.N; ++j) {
                const std::size_t t = ds.idx(i, j);
                const double w = 1.0 / (1.0 + std::abs(ds.x2[t](c)) + std::abs(ds.xt2[t](c)));
                const double d = ds.x2[t](c) - ds.xt2[t](c);
                num += w * w * 2.0 * d * xa;
                den += w * w * xa * xa;
                ++count;
            }
        }
        if (count == 0)
            throw InsufficientExcitation("no usable samples for state component " +
                                         std::to_string(c));
        const double c_hat = num / den;
        const double disc = 1.0 - 4.0 * c_hat;
        if (disc < -1e-9)
            throw InconsistentData("order equation has no real solution for component " +
                                   std::to_string(c) + " (c = " + std::to_string(c_hat) + ")");
        const double s = std::sqrt(std::max(disc, 0.0));
        const double rp = 0.5 * (1.0 + s);
        const double rm = 0.5 * (1.0 - s);

        auto residual = [&](double r) {
            const double quad = 0.5 * (r - r * r);
            const double cubic = (r * r * r - 3.0 * r * r + 2.0 * r) / 6.0;
            double acc = 0.0;
            for (Eigen::Index i = 0; i < ds.M; ++i) {
                const double x0c = ds.x0[static_cast<std::size_t>(i)](c);
                for (Eigen::Index j = 0; j <= ds.N; ++j) {
                    const std::size_t t = ds.idx(i, j);
                    const double w = 1.0 / (1.0 + std::abs(ds.x3[t](c)) + std::abs(ds.xt3[t](c)));
                    const double d3 = ds.x3[t](c) - ds.xt3[t](c);
                    const double model = quad * ds.x1[t](c) + cubic * x0c;
                    const double r3 = w * (d3 - model);
                    acc += r3 * r3;
                }
            }
            return acc;
        };
        const double resp = residual(rp);
        const double resm = residual(rm);

        double chosen;
        const double tie = 1e-12 * std::max(1.0, std::max(resp, resm));
        if (std::abs(resp - resm) <= tie) {
            // Tie (e.g. order one gives roots {0, 1} with both residuals
            // zero): prefer the root inside the admissible range.
            chosen = (rp > 0.0 && rp <= 1.0) ? rp : rm;
        } else {
            chosen = resp < resm ? rp : rm;
        }

        report.raw(c) = chosen;
        report.samples_used[static_cast<std::size_t>(c)] = count;
        report.root_plus(c) = rp;
        report.root_minus(c) = rm;
        report.residual_plus(c) = resp;
        report.residual_minus(c) = resm;
    }
    return OrderEstimate{clamp_orders(report.raw), std::move(report)};
}

void build_regression(const ExperimentDataset& ds, const BasisSpec& basis,
                      const FractionalOrderVector& alpha_hat, Eigen::Index channel,
                      Eigen::MatrixXd& Phi, Eigen::VectorXd& Y) {
    if (channel != ds.active_channel)
        throw UsageError("dataset was generated with a different active channel");
    if (basis.dim() != ds.n) throw UsageError("basis dimension does not match the dataset");
    if (alpha_hat.size() != ds.n) throw UsageError("order vector does not match the dataset");

    const Eigen::Index L = basis.length();
    const Eigen::Index n = ds.n;
    Phi.setZero(ds.M * ds.N * n, n * L);
    Y.resize(ds.M * ds.N * n);

    Eigen::ArrayXd scale = Eigen::ArrayXd::Ones(n);
    if (ds.time_kind == TimeKind::continuous) scale = Eigen::pow(ds.h, -alpha_hat.values().array());

    parallel_for(static_cast<std::size_t>(ds.M), Exec::openmp, [&](std::size_t ii) {
        const Eigen::Index i = static_cast<Eigen::Index>(ii);
        const Eigen::VectorXd phi = eval_basis(basis, ds.x0[ii]);
        const std::size_t ref = ds.idx(i, 0);
        for (Eigen::Index j = 1; j <= ds.N; ++j) {
            const std::size_t t = ds.idx(i, j);
            const double du = ds.u0[t](channel) - ds.u0[ref](channel);
            const Eigen::VectorXd y = (scale * (ds.x1[t] - ds.x1[ref]).array()).matrix();
            const Eigen::Index row0 = (i * ds.N + (j - 1)) * n;
            for (Eigen::Index r = 0; r < n; ++r) {
                Phi.block(row0 + r, r * L, 1, L) = (phi * du).transpose();
                Y(row0 + r) = y(r);
            }
        }
    });
}

ControlFit fit_control_field(const ExperimentDataset& ds, const BasisSpec& basis,
                             const FractionalOrderVector& alpha_hat, Eigen::Index channel) {
    Eigen::MatrixXd Phi;
    Eigen::VectorXd Y;
    build_regression(ds, basis, alpha_hat, channel, Phi, Y);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Phi);
    const Eigen::Index k = std::min(Phi.rows(), Phi.cols());
    const Eigen::VectorXd rdiag = qr.matrixR().diagonal().head(k).cwiseAbs();
    const double rmax = rdiag.maxCoeff();
    const double rmin = rdiag.minCoeff();
    const double cond = rmax == 0.0 ? std::numeric_limits<double>::infinity() : rmax / std::max(rmin, 1e-300);
    if (qr.rank() < Phi.cols())
        throw IllPosedError("control-field regression is rank deficient (" +
                                std::to_string(qr.rank()) + " of " + std::to_string(Phi.cols()) +
                                " columns independent)",
                            cond);

    ControlFit fit;
    fit.coefficients = qr.solve(Y);
    fit.residual = (Phi * fit.coefficients - Y).norm();
    fit.condition_estimate = cond;
    fit.rows = Phi.rows();
    return fit;
}

Eigen::VectorXd solve_normal_equations(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& Y) {
    const Eigen::Index p = Phi.cols();
    Eigen::MatrixXd G = Phi.transpose() * Phi;
    Eigen::VectorXd b = Phi.transpose() * Y;

    // Cholesky factorization G = L L^T, then two triangular solves.
    Eigen::MatrixXd Lf = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        double diag = G(j, j);
        for (Eigen::Index k = 0; k < j; ++k) diag -= Lf(j, k) * Lf(j, k);
        if (diag <= 0.0)
            throw NumericalError("normal equations are not positive definite at column " +
                                 std::to_string(j));
        Lf(j, j) = std::sqrt(diag);
        for (Eigen::Index i = j + 1; i < p; ++i) {
            double v = G(i, j);
            for (Eigen::Index k = 0; k < j; ++k) v -= Lf(i, k) * Lf(j, k);
            Lf(i, j) = v / Lf(j, j);
        }
    }
    Eigen::VectorXd z(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        double v = b(i);
        for (Eigen::Index k = 0; k < i; ++k) v -= Lf(i, k) * z(k);
        z(i) = v / Lf(i, i);
    }
    Eigen::VectorXd x(p);
    for (Eigen::Index i = p - 1; i >= 0; --i) {
        double v = z(i);
        for (Eigen::Index k = i + 1; k < p; ++k) v -= Lf(k, i) * x(k);
        x(i) = v / Lf(i, i);
    }
    return x;
}

Eigen::MatrixXd ControlFieldEstimate::eval(const Eigen::VectorXd& x) const {
    const Eigen::Index L = basis.length();
    const Eigen::Index n = basis.dim();
    const Eigen::VectorXd phi = eval_basis(basis, x);
    Eigen::MatrixXd g(n, channels());
    for (Eigen::Index l = 0; l < channels(); ++l)
        for (Eigen::Index r = 0; r < n; ++r)
            g(r, l) = phi.dot(coefficients[static_cast<std::size_t>(l)].segment(r * L, L));
    return g;
}

DriftFit fit_drift_field(const ExperimentDataset& ds, const ControlFieldEstimate& g_hat,
                         const FractionalOrderVector& alpha_hat, bool fit_expansion) {
    if (alpha_hat.size() != ds.n) throw UsageError("order vector does not match the dataset");
    if (g_hat.basis.dim() != ds.n) throw UsageError("basis dimension does not match the dataset");

    Eigen::ArrayXd scale = Eigen::ArrayXd::Ones(ds.n);
    if (ds.time_kind == TimeKind::continuous) scale = Eigen::pow(ds.h, -alpha_hat.values().array());

    DriftFit fit;
    fit.samples.resize(static_cast<std::size_t>(ds.M));
    parallel_for(static_cast<std::size_t>(ds.M), Exec::openmp, [&](std::size_t ii) {
        const Eigen::Index i = static_cast<Eigen::Index>(ii);
        const Eigen::VectorXd& x0 = ds.x0[ii];
        const Eigen::MatrixXd g0 = g_hat.eval(x0);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(ds.n);
        for (Eigen::Index j = 1; j <= ds.N; ++j) {
            const std::size_t t = ds.idx(i, j);
            if (ds.time_kind == TimeKind::continuous)
                acc += (scale * (ds.x1[t] - x0).array()).matrix() - g0 * ds.u0[t];
            else
                acc += ds.x1[t] - g0 * ds.u0[t] - alpha_hat.values().cwiseProduct(x0);
        }
        fit.samples[ii] = {x0, acc / static_cast<double>(ds.N)};
    });

    if (fit_expansion) {
        const Eigen::Index L = g_hat.basis.length();
        Eigen::MatrixXd A(ds.M, L);
        for (Eigen::Index i = 0; i < ds.M; ++i)
            A.row(i) = eval_basis(g_hat.basis, ds.x0[static_cast<std::size_t>(i)]).transpose();
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
        Eigen::VectorXd coeffs(ds.n * L);
        double res_sq = 0.0;
        for (Eigen::Index r = 0; r < ds.n; ++r) {
            Eigen::VectorXd target(ds.M);
            for (Eigen::Index i = 0; i < ds.M; ++i)
                target(i) = fit.samples[static_cast<std::size_t>(i)].second(r);
            Eigen::VectorXd br = qr.solve(target);
            coeffs.segment(r * L, L) = br;
            res_sq += (A * br - target).squaredNorm();
        }
        fit.expansion = BasisExpansion{g_hat.basis, std::move(coeffs)};
        fit.fit_residual = std::sqrt(res_sq);
    }
    return fit;
}

namespace {

LearnedModel assemble_model(const std::vector<ExperimentDataset>& datasets,
                            const BasisSpec& basis, OrderEstimate order) {
    if (datasets.empty()) throw UsageError("at least one dataset is required");
    const ExperimentDataset& first = datasets.front();
    if (static_cast<Eigen::Index>(datasets.size()) != first.m)
        throw UsageError("expected one dataset per input channel");
    for (Eigen::Index l = 0; l < first.m; ++l)
        if (datasets[static_cast<std::size_t>(l)].active_channel != l)
            throw UsageError("datasets must be ordered by active channel");

    LearnedModel model;
    model.time_kind = first.time_kind;
    model.h = first.h;
    model.n = first.n;
    model.m = first.m;
    model.domain = first.domain;
    model.alpha_hat = order.alpha_hat;
    model.diagnostics.order = std::move(order.report);

    model.g_hat.basis = basis;
    for (Eigen::Index l = 0; l < first.m; ++l) {
        ControlFit fit = fit_control_field(datasets[static_cast<std::size_t>(l)], basis,
                                           model.alpha_hat, l);
        model.g_hat.coefficients.push_back(std::move(fit.coefficients));
        model.diagnostics.g_residual.push_back(fit.residual);
        model.diagnostics.g_condition.push_back(fit.condition_estimate);
    }

    DriftFit drift = fit_drift_field(first, model.g_hat, model.alpha_hat, true);
    model.f_samples = std::move(drift.samples);
    model.f_hat = std::move(drift.expansion);
    model.diagnostics.f_fit_residual = drift.fit_residual;
    return model;
}

}  // namespace

ControlAffineSystem LearnedModel::to_system() const {
    if (!f_hat) throw UsageError("learned model has no drift expansion to simulate");
    BasisExpansion f = *f_hat;
    ControlFieldEstimate g = g_hat;
    return ControlAffineSystem(
        n, m, [f](const Eigen::VectorXd& x) { return f.eval(x); },
        [g](const Eigen::VectorXd& x) { return g.eval(x); }, domain, alpha_hat, time_kind);
}

std::vector<ExperimentDataset> design_experiments(const ControlAffineSystem& system,
                                                  const ExperimentPlan& plan,
                                                  const SimulationConfig& config, Exec exec) {
    std::vector<ExperimentDataset> datasets;
    for (Eigen::Index l = 0; l < system.input_dim(); ++l) {
        ExperimentPlan channel_plan = plan;
        channel_plan.active_channel = l;
        channel_plan.input_law.seed =
            plan.input_law.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(l);
        if (system.time_kind() == TimeKind::continuous)
            datasets.push_back(generate_dataset_continuous(system, channel_plan, config, exec));
        else
            datasets.push_back(generate_dataset_discrete(system, channel_plan, exec));
    }
    return datasets;
}

LearnedModel learn_dynamics(const std::vector<ExperimentDataset>& datasets,
                            const BasisSpec& basis) {
    if (datasets.empty()) throw UsageError("at least one dataset is required");
    OrderEstimate order = datasets.front().time_kind == TimeKind::continuous
                              ? estimate_order_continuous(datasets.front())
                              : estimate_order_discrete(datasets.front());
    return assemble_model(datasets, basis, std::move(order));
}

LearnedModel integer_order_baseline(const std::vector<ExperimentDataset>& datasets,
                                    const BasisSpec& basis) {
    if (datasets.empty()) throw UsageError("at least one dataset is required");
    OrderEstimate order{FractionalOrderVector::uniform(1.0, datasets.front().n), OrderReport{}};
    order.report.raw = Eigen::VectorXd::Ones(datasets.front().n);
    order.report.samples_used.assign(static_cast<std::size_t>(datasets.front().n), 0);
    return assemble_model(datasets, basis, std::move(order));
}

}  // namespace fracdyn
