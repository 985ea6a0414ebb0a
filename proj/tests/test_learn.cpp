#include <doctest.h>

#include <cmath>
#include <random>

#include "fracdyn/learn.hpp"

using namespace fracdyn;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

// Synthetic control-affine system whose control field lies exactly in the
// span of the given basis.
struct SyntheticSystem {
    ControlAffineSystem system;
    Eigen::VectorXd g_coeffs;  // nL, single channel
};

SyntheticSystem make_in_span_system(const BasisSpec& basis, double alpha, TimeKind kind,
                                    std::uint64_t seed) {
    const Eigen::Index n = basis.dim();
    const Eigen::Index L = basis.length();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-0.6, 0.6);
    Eigen::VectorXd coeffs(n * L);
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = dist(rng);
    BasisExpansion g_field{basis, coeffs};

    auto drift = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            f(i) = 0.4 * x(i) - 0.3 * x(i) * x(i) + (i == 0 ? 0.2 : -0.1);
        return f;
    };
    auto control = [g_field](const Eigen::VectorXd& x) {
        Eigen::VectorXd col = g_field.eval(x);
        Eigen::MatrixXd g(col.size(), 1);
        g.col(0) = col;
        return g;
    };
    ControlAffineSystem sys(n, 1, drift, control, basis.domain(),
                            FractionalOrderVector::uniform(alpha, n), kind);
    return SyntheticSystem{std::move(sys), std::move(coeffs)};
}

ExperimentPlan default_plan(Eigen::Index M, Eigen::Index N, std::uint64_t seed,
                            double range = 1.0) {
    ExperimentPlan plan;
    plan.M = M;
    plan.N = N;
    plan.input_law.lo = -range;
    plan.input_law.hi = range;
    plan.input_law.seed = seed;
    return plan;
}

}  // namespace

TEST_CASE("dataset shapes and reference trial") {
    BenchmarkSpec bench = make_van_der_pol();
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds =
        generate_dataset_continuous(bench.system, default_plan(20, 10, 2), sim);
    CHECK(ds.M == 20);
    CHECK(ds.N == 10);
    CHECK(ds.x0.size() == 20);
    CHECK(ds.x1.size() == 20 * 11);
    CHECK(ds.xt2.size() == 20 * 11);
    CHECK(ds.u2.empty());
    for (const auto& x : ds.x0) CHECK(ds.domain.contains(x));
}

TEST_CASE("discrete dataset carries the third step") {
    BenchmarkSpec bench = make_ultra_capacitor();
    ExperimentDataset ds = generate_dataset_discrete(bench.system, default_plan(8, 5, 3));
    CHECK(ds.x3.size() == 8 * 6);
    CHECK(ds.xt3.size() == 8 * 6);
    CHECK(ds.u2.size() == 8 * 6);
}

TEST_CASE("serial and parallel dataset generation are bit-identical") {
    BenchmarkSpec bench = make_lotka_volterra();
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentPlan plan = default_plan(15, 8, 11);
    ExperimentDataset a = generate_dataset_continuous(bench.system, plan, sim, Exec::serial);
    ExperimentDataset b = generate_dataset_continuous(bench.system, plan, sim, Exec::openmp);
    for (std::size_t t = 0; t < a.x1.size(); ++t) {
        CHECK(a.x1[t] == b.x1[t]);
        CHECK(a.x2[t] == b.x2[t]);
        CHECK(a.xt2[t] == b.xt2[t]);
    }

    BenchmarkSpec logistic = make_logistic_map();
    ExperimentPlan dplan = default_plan(15, 8, 11, 0.5);
    ExperimentDataset c = generate_dataset_discrete(logistic.system, dplan, Exec::serial);
    ExperimentDataset d = generate_dataset_discrete(logistic.system, dplan, Exec::openmp);
    for (std::size_t t = 0; t < c.x1.size(); ++t) {
        CHECK(c.x3[t] == d.x3[t]);
        CHECK(c.xt3[t] == d.xt3[t]);
    }
}

TEST_CASE("memory reset replicas coincide for integer order") {
    BenchmarkSpec bench = make_van_der_pol(0.5, 1.0);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds = generate_dataset_continuous(bench.system, default_plan(6, 4, 5), sim);
    for (std::size_t t = 0; t < ds.x2.size(); ++t)
        CHECK((ds.x2[t] - ds.xt2[t]).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("order recovery on the continuous benchmarks") {
    SimulationConfig sim;
    sim.h = 0.1;
    for (const auto& [name, alpha] : std::vector<std::pair<std::string, double>>{
             {"vanderpol", 0.9}, {"lotka", 0.98}}) {
        BenchmarkSpec bench = make_benchmark(name);
        ExperimentDataset ds =
            generate_dataset_continuous(bench.system, default_plan(15, 8, 7), sim);
        OrderEstimate est = estimate_order_continuous(ds);
        for (Eigen::Index c = 0; c < est.alpha_hat.size(); ++c)
            CHECK(std::abs(est.alpha_hat[c] - alpha) <= 1e-8);
    }
}

TEST_CASE("single-sample slope value") {
    // d = 0.05, e = 0.5 -> alpha = 1 - 0.1.
    ExperimentDataset ds;
    ds.time_kind = TimeKind::continuous;
    ds.h = 0.1;
    ds.M = 1;
    ds.N = 1;
    ds.n = 1;
    ds.m = 1;
    ds.domain = Box{{-1.0, 1.0}};
    Eigen::VectorXd x0(1), x1(1), x2(1), xt2(1);
    x0 << 1.0;
    x1 << 0.5;  // e = 0.5
    x2 << 0.3;
    xt2 << 0.25;  // d = 0.05
    ds.x0 = {x0};
    ds.x1 = {x1, x1};
    ds.x2 = {x2, x2};
    ds.xt2 = {xt2, xt2};
    ds.u0 = {Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)};
    ds.u1 = ds.u0;
    OrderEstimate est = estimate_order_continuous(ds);
    CHECK(est.alpha_hat[0] == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("order one is recovered when there is no memory") {
    BenchmarkSpec bench = make_van_der_pol(0.5, 1.0);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds = generate_dataset_continuous(bench.system, default_plan(8, 5, 9), sim);
    OrderEstimate est = estimate_order_continuous(ds);
    for (Eigen::Index c = 0; c < 2; ++c) CHECK(est.alpha_hat[c] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("discrete order recovery selects the correct root") {
    BenchmarkSpec bench = make_logistic_map();  // alpha = 0.6
    ExperimentDataset ds = generate_dataset_discrete(bench.system, default_plan(20, 10, 13, 0.5));
    OrderEstimate est = estimate_order_discrete(ds);
    CHECK(std::abs(est.alpha_hat[0] - 0.6) <= 1e-8);
    CHECK(est.report.root_plus(0) == doctest::Approx(0.6).epsilon(1e-7));
    CHECK(est.report.root_minus(0) == doctest::Approx(0.4).epsilon(1e-7));
    CHECK(est.report.residual_plus(0) < est.report.residual_minus(0));

    BenchmarkSpec uc = make_ultra_capacitor();  // alpha = 0.2, lower root
    ExperimentDataset uds = generate_dataset_discrete(uc.system, default_plan(20, 10, 13, 0.5));
    OrderEstimate uest = estimate_order_discrete(uds);
    for (Eigen::Index c = 0; c < 2; ++c) CHECK(std::abs(uest.alpha_hat[c] - 0.2) <= 1e-8);
    CHECK(uest.report.residual_minus(0) < uest.report.residual_plus(0));
}

TEST_CASE("discrete double root at one half") {
    BenchmarkSpec bench = make_logistic_map(1.0, 0.5);
    ExperimentDataset ds = generate_dataset_discrete(bench.system, default_plan(12, 6, 17, 0.5));
    OrderEstimate est = estimate_order_discrete(ds);
    CHECK(std::abs(est.alpha_hat[0] - 0.5) <= 1e-7);
}

TEST_CASE("discrete order one resolves the root tie toward one") {
    BenchmarkSpec bench = make_logistic_map(1.0, 1.0);
    ExperimentDataset ds = generate_dataset_discrete(bench.system, default_plan(12, 6, 19, 0.5));
    OrderEstimate est = estimate_order_discrete(ds);
    CHECK(est.alpha_hat[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("insufficient excitation is reported") {
    // Zero fields: x(1) = x(0) exactly, so every slope sample is excluded.
    auto drift = [](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(1); };
    auto control = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(1, 1); };
    ControlAffineSystem sys(1, 1, drift, control, Box{{-1.0, 1.0}},
                            FractionalOrderVector::uniform(0.7, 1), TimeKind::continuous);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds = generate_dataset_continuous(sys, default_plan(5, 3, 23), sim);
    CHECK_THROWS_AS(estimate_order_continuous(ds), InsufficientExcitation);
}

TEST_CASE("in-span control field is recovered exactly") {
    BasisSpec basis = BasisSpec::legendre(5, Box{{-1.0, 1.0}, {-1.0, 1.0}});
    SyntheticSystem synth = make_in_span_system(basis, 0.7, TimeKind::continuous, 101);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds =
        generate_dataset_continuous(synth.system, default_plan(50, 10, 29), sim);

    OrderEstimate est = estimate_order_continuous(ds);
    CHECK(std::abs(est.alpha_hat[0] - 0.7) <= 1e-9);

    ControlFit fit = fit_control_field(ds, basis, est.alpha_hat, 0);
    CHECK((fit.coefficients - synth.g_coeffs).lpNorm<Eigen::Infinity>() <= 1e-8);
    CHECK(fit.residual <= 1e-10);
}

TEST_CASE("constant control field is reproduced everywhere") {
    auto drift = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(0.2 * x); };
    auto control = [](const Eigen::VectorXd&) {
        Eigen::MatrixXd g(2, 1);
        g << 1.7, -0.4;
        return g;
    };
    ControlAffineSystem sys(2, 1, drift, control, Box{{-1.0, 1.0}, {-1.0, 1.0}},
                            FractionalOrderVector::uniform(0.8, 2), TimeKind::continuous);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds = generate_dataset_continuous(sys, default_plan(30, 6, 31), sim);
    BasisSpec basis = BasisSpec::legendre(4, sys.domain());
    LearnedModel model = learn_dynamics({ds}, basis);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int s = 0; s < 10; ++s) {
        Eigen::VectorXd x = vec2(dist(rng), dist(rng));
        Eigen::MatrixXd g = model.g_hat.eval(x);
        CHECK(std::abs(g(0, 0) - 1.7) <= 1e-10);
        CHECK(std::abs(g(1, 0) + 0.4) <= 1e-10);
    }
}

TEST_CASE("zero input differences make the regression ill-posed") {
    BenchmarkSpec bench = make_van_der_pol();
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds = generate_dataset_continuous(bench.system, default_plan(5, 3, 37), sim);
    for (auto& u : ds.u0) u.setConstant(0.25);
    BasisSpec basis = BasisSpec::legendre(3, bench.system.domain());
    CHECK_THROWS_AS(fit_control_field(ds, basis, bench.system.alpha(), 0), IllPosedError);
}

TEST_CASE("channel mismatch is a usage error") {
    BenchmarkSpec bench = make_van_der_pol();
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds = generate_dataset_continuous(bench.system, default_plan(4, 2, 41), sim);
    BasisSpec basis = BasisSpec::legendre(3, bench.system.domain());
    CHECK_THROWS_AS(fit_control_field(ds, basis, bench.system.alpha(), 1), UsageError);
}

TEST_CASE("QR and normal-equations solutions coincide") {
    BasisSpec basis = BasisSpec::legendre(5, Box{{-1.0, 1.0}, {-1.0, 1.0}});
    SyntheticSystem synth = make_in_span_system(basis, 0.6, TimeKind::continuous, 103);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds =
        generate_dataset_continuous(synth.system, default_plan(40, 8, 43), sim);
    OrderEstimate est = estimate_order_continuous(ds);

    Eigen::MatrixXd Phi;
    Eigen::VectorXd Y;
    build_regression(ds, basis, est.alpha_hat, 0, Phi, Y);
    ControlFit qr = fit_control_field(ds, basis, est.alpha_hat, 0);
    Eigen::VectorXd ne = solve_normal_equations(Phi, Y);
    const double scale = std::max(1.0, qr.coefficients.lpNorm<Eigen::Infinity>());
    CHECK((qr.coefficients - ne).lpNorm<Eigen::Infinity>() / scale <= 1e-8);
    CHECK(qr.condition_estimate < 1e6);

    // Row order does not change the least-squares solution (uniqueness).
    Eigen::MatrixXd Phi_rev(Phi.rows(), Phi.cols());
    Eigen::VectorXd Y_rev(Y.size());
    for (Eigen::Index r = 0; r < Phi.rows(); ++r) {
        Phi_rev.row(r) = Phi.row(Phi.rows() - 1 - r);
        Y_rev(r) = Y(Phi.rows() - 1 - r);
    }
    Eigen::VectorXd ne_rev = solve_normal_equations(Phi_rev, Y_rev);
    CHECK((ne - ne_rev).lpNorm<Eigen::Infinity>() / scale <= 1e-9);
}

TEST_CASE("re-differencing against another reference trial leaves B unchanged") {
    BasisSpec basis = BasisSpec::legendre(5, Box{{-1.0, 1.0}, {-1.0, 1.0}});
    SyntheticSystem synth = make_in_span_system(basis, 0.75, TimeKind::continuous, 107);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds =
        generate_dataset_continuous(synth.system, default_plan(30, 8, 47), sim);
    OrderEstimate est = estimate_order_continuous(ds);
    ControlFit fit = fit_control_field(ds, basis, est.alpha_hat, 0);

    // Swap trial 3 into the reference slot for every initial condition.
    ExperimentDataset swapped = ds;
    for (Eigen::Index i = 0; i < ds.M; ++i) {
        std::swap(swapped.u0[swapped.idx(i, 0)], swapped.u0[swapped.idx(i, 3)]);
        std::swap(swapped.u1[swapped.idx(i, 0)], swapped.u1[swapped.idx(i, 3)]);
        std::swap(swapped.x1[swapped.idx(i, 0)], swapped.x1[swapped.idx(i, 3)]);
        std::swap(swapped.x2[swapped.idx(i, 0)], swapped.x2[swapped.idx(i, 3)]);
        std::swap(swapped.xt2[swapped.idx(i, 0)], swapped.xt2[swapped.idx(i, 3)]);
    }
    ControlFit refit = fit_control_field(swapped, basis, est.alpha_hat, 0);
    CHECK((fit.coefficients - refit.coefficients).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("zero drift produces zero drift samples") {
    BasisSpec basis = BasisSpec::legendre(4, Box{{-1.0, 1.0}, {-1.0, 1.0}});
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> dist(-0.6, 0.6);
    Eigen::VectorXd coeffs(8);
    for (Eigen::Index i = 0; i < 8; ++i) coeffs(i) = dist(rng);
    BasisExpansion g_field{basis, coeffs};
    auto drift = [](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(2); };
    auto control = [g_field](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g(2, 1);
        g.col(0) = g_field.eval(x);
        return g;
    };
    ControlAffineSystem sys(2, 1, drift, control, basis.domain(),
                            FractionalOrderVector::uniform(0.85, 2), TimeKind::continuous);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds = generate_dataset_continuous(sys, default_plan(25, 6, 53), sim);
    LearnedModel model = learn_dynamics({ds}, basis);
    for (const auto& [x0, f] : model.f_samples)
        CHECK(f.lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("van der Pol drift is recovered at a known point") {
    BenchmarkSpec bench = make_van_der_pol();
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds =
        generate_dataset_continuous(bench.system, default_plan(60, 12, 59), sim);
    BasisSpec basis = BasisSpec::legendre(5, bench.system.domain());
    LearnedModel model = learn_dynamics({ds}, basis);
    REQUIRE(model.f_hat.has_value());

    // Drift samples carry only the control-field truncation residue times
    // the mean input, so they sit close to the true drift.
    for (Eigen::Index i = 0; i < ds.M; ++i) {
        const auto& [x0, f_hat] = model.f_samples[static_cast<std::size_t>(i)];
        CHECK((f_hat - bench.system.drift(x0)).lpNorm<Eigen::Infinity>() <= 0.15);
    }

    // The fitted expansion additionally projects the cubic drift term onto
    // the L = 5 span, which costs about 0.23 at (1, 0); stay within a loose
    // band around the true value there.
    Eigen::VectorXd f = model.f_hat->eval(vec2(1.0, 0.0));
    CHECK(std::abs(f(0) - 1.0 / 3.0) <= 0.35);
    CHECK(std::abs(f(1) - 2.0) <= 0.35);
}

TEST_CASE("drift samples plus learned fields reproduce the recorded step") {
    BasisSpec basis = BasisSpec::legendre(5, Box{{-1.0, 1.0}, {-1.0, 1.0}});
    SyntheticSystem synth = make_in_span_system(basis, 0.65, TimeKind::continuous, 113);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds =
        generate_dataset_continuous(synth.system, default_plan(50, 10, 61), sim);
    LearnedModel model = learn_dynamics({ds}, basis);

    const Eigen::ArrayXd ha = model.alpha_hat.pow_step(sim.h);
    for (Eigen::Index i = 0; i < ds.M; ++i) {
        const std::size_t t = ds.idx(i, 1);
        const Eigen::VectorXd& x0 = ds.x0[static_cast<std::size_t>(i)];
        Eigen::VectorXd rhs = model.f_samples[static_cast<std::size_t>(i)].second +
                              model.g_hat.eval(x0) * ds.u0[t];
        Eigen::VectorXd predicted = (ha * rhs.array()).matrix() + x0;
        CHECK((predicted - ds.x1[t]).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
}

TEST_CASE("discrete in-span recovery") {
    BasisSpec basis = BasisSpec::legendre(5, Box{{-1.0, 1.0}, {-1.0, 1.0}});
    SyntheticSystem synth = make_in_span_system(basis, 0.35, TimeKind::discrete, 127);
    ExperimentDataset ds = generate_dataset_discrete(synth.system, default_plan(50, 10, 67));
    LearnedModel model = learn_dynamics({ds}, basis);
    CHECK(std::abs(model.alpha_hat[0] - 0.35) <= 1e-8);
    CHECK((model.g_hat.coefficients[0] - synth.g_coeffs).lpNorm<Eigen::Infinity>() <= 1e-8);
    for (Eigen::Index i = 0; i < ds.M; ++i) {
        const Eigen::VectorXd& x0 = ds.x0[static_cast<std::size_t>(i)];
        Eigen::VectorXd expected = synth.system.drift(x0);
        CHECK((model.f_samples[static_cast<std::size_t>(i)].second - expected)
                  .lpNorm<Eigen::Infinity>() <= 1e-8);
    }
}

TEST_CASE("two-channel system is learned channel by channel") {
    BasisSpec basis = BasisSpec::legendre(3, Box{{-1.0, 1.0}, {-1.0, 1.0}});
    std::mt19937_64 rng(131);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    Eigen::VectorXd c0(6), c1(6);
    for (Eigen::Index i = 0; i < 6; ++i) {
        c0(i) = dist(rng);
        c1(i) = dist(rng);
    }
    BasisExpansion col0{basis, c0}, col1{basis, c1};
    auto drift = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(0.3 * x); };
    auto control = [col0, col1](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g(2, 2);
        g.col(0) = col0.eval(x);
        g.col(1) = col1.eval(x);
        return g;
    };
    ControlAffineSystem sys(2, 2, drift, control, basis.domain(),
                            FractionalOrderVector::uniform(0.7, 2), TimeKind::continuous);
    SimulationConfig sim;
    sim.h = 0.1;
    auto datasets = design_experiments(sys, default_plan(30, 8, 71), sim);
    REQUIRE(datasets.size() == 2);
    CHECK(datasets[0].active_channel == 0);
    CHECK(datasets[1].active_channel == 1);
    // Non-active channels are forced to zero.
    for (const auto& u : datasets[0].u0) CHECK(u(1) == 0.0);
    for (const auto& u : datasets[1].u0) CHECK(u(0) == 0.0);

    LearnedModel model = learn_dynamics(datasets, basis);
    CHECK((model.g_hat.coefficients[0] - c0).lpNorm<Eigen::Infinity>() <= 1e-8);
    CHECK((model.g_hat.coefficients[1] - c1).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("integer baseline equals the pipeline on an order-one system") {
    BasisSpec basis = BasisSpec::legendre(4, Box{{-1.0, 1.0}, {-1.0, 1.0}});
    SyntheticSystem synth = make_in_span_system(basis, 1.0, TimeKind::continuous, 137);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds =
        generate_dataset_continuous(synth.system, default_plan(25, 6, 73), sim);
    LearnedModel learned = learn_dynamics({ds}, basis);
    LearnedModel baseline = integer_order_baseline({ds}, basis);

    CHECK(baseline.alpha_hat[0] == 1.0);  // by construction
    CHECK(std::abs(learned.alpha_hat[0] - 1.0) <= 1e-9);
    CHECK((learned.g_hat.coefficients[0] - baseline.g_hat.coefficients[0])
              .lpNorm<Eigen::Infinity>() <= 1e-7);
    for (std::size_t i = 0; i < learned.f_samples.size(); ++i)
        CHECK((learned.f_samples[i].second - baseline.f_samples[i].second)
                  .lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("learned model round-trips through a simulatable system") {
    BasisSpec basis = BasisSpec::legendre(5, Box{{-1.0, 1.0}, {-1.0, 1.0}});
    SyntheticSystem synth = make_in_span_system(basis, 0.8, TimeKind::continuous, 139);
    SimulationConfig sim;
    sim.h = 0.1;
    ExperimentDataset ds =
        generate_dataset_continuous(synth.system, default_plan(40, 10, 79), sim);
    LearnedModel model = learn_dynamics({ds}, basis);
    ControlAffineSystem learned_sys = model.to_system();
    CHECK(learned_sys.time_kind() == TimeKind::continuous);
    CHECK(learned_sys.state_dim() == 2);
    Eigen::MatrixXd g_true = synth.system.control(vec2(0.2, -0.3));
    Eigen::MatrixXd g_model = learned_sys.control(vec2(0.2, -0.3));
    CHECK((g_true - g_model).lpNorm<Eigen::Infinity>() <= 1e-8);
}
