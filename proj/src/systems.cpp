#include "fracdyn/systems.hpp"

#include <cmath>
#include <numbers>

namespace fracdyn {

Box::Box(Eigen::VectorXd lo_, Eigen::VectorXd hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size() || lo.size() == 0) throw UsageError("box bounds must have equal nonzero dimension");
    for (Eigen::Index i = 0; i < lo.size(); ++i)
        if (!(lo(i) < hi(i))) throw UsageError("box bounds must satisfy lo < hi in every dimension");
}

Box::Box(std::initializer_list<std::pair<double, double>> bounds) {
    lo.resize(static_cast<Eigen::Index>(bounds.size()));
    hi.resize(static_cast<Eigen::Index>(bounds.size()));
    Eigen::Index i = 0;
    for (const auto& [a, b] : bounds) {
        lo(i) = a;
        hi(i) = b;
        ++i;
    }
    *this = Box(lo, hi);
}

bool Box::contains(const Eigen::VectorXd& x) const {
    if (x.size() != dim()) return false;
    return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
}

double Box::volume() const { return (hi - lo).prod(); }

double Box::diameter() const { return (hi - lo).norm(); }

std::string to_string(TimeKind kind) {
    return kind == TimeKind::continuous ? "continuous" : "discrete";
}

TimeKind time_kind_from_string(const std::string& name) {
    if (name == "continuous") return TimeKind::continuous;
    if (name == "discrete") return TimeKind::discrete;
    throw UsageError("unknown time kind '" + name + "' (expected continuous or discrete)");
}

ControlAffineSystem::ControlAffineSystem(Eigen::Index state_dim, Eigen::Index input_dim,
                                         DriftFn drift, ControlFn control, Box domain,
                                         FractionalOrderVector alpha, TimeKind time_kind)
    : n_(state_dim),
      m_(input_dim),
      drift_(std::move(drift)),
      control_(std::move(control)),
      domain_(std::move(domain)),
      alpha_(std::move(alpha)),
      time_kind_(time_kind) {
    if (n_ < 1 || m_ < 1) throw UsageError("system dimensions must be positive");
    if (domain_.dim() != n_) throw UsageError("domain dimension does not match state dimension");
    if (alpha_.size() != n_) throw UsageError("order vector length does not match state dimension");
    if (!drift_ || !control_) throw UsageError("drift and control evaluators must be set");
}

Eigen::VectorXd ControlAffineSystem::drift(const Eigen::VectorXd& x) const {
    Eigen::VectorXd f = drift_(x);
    if (f.size() != n_) throw UsageError("drift evaluator returned wrong dimension");
    return f;
}

Eigen::MatrixXd ControlAffineSystem::control(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd g = control_(x);
    if (g.rows() != n_ || g.cols() != m_) throw UsageError("control evaluator returned wrong shape");
    return g;
}

ControlAffineSystem ControlAffineSystem::with_alpha(FractionalOrderVector alpha) const {
    return ControlAffineSystem(n_, m_, drift_, control_, domain_, std::move(alpha), time_kind_);
}

BenchmarkSpec make_van_der_pol(double epsilon, double alpha) {
    if (epsilon == 0.0) throw UsageError("van der Pol parameter epsilon must be nonzero");
    auto drift = [epsilon](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(2);
        f(0) = epsilon * (x(0) - x(0) * x(0) * x(0) / 3.0 - x(1));
        f(1) = x(0) / epsilon;
        return f;
    };
    auto control = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g(2, 1);
        g(0, 0) = 1.2 + std::sin(x(0)) * std::sin(x(1));
        g(1, 0) = std::exp(std::sin(x(1) - 0.5 * std::numbers::pi) - 1.0);
        return g;
    };
    ControlAffineSystem sys(2, 1, drift, control, Box{{-2.0, 2.0}, {-4.0, 4.0}},
                            FractionalOrderVector::uniform(alpha, 2), TimeKind::continuous);
    return BenchmarkSpec{"vanderpol", std::move(sys), {{"epsilon", epsilon}, {"alpha", alpha}},
                         FractionalOrderVector::uniform(alpha, 2)};
}

BenchmarkSpec make_lotka_volterra(double a, double beta, double delta, double gamma,
                                  double alpha) {
    auto drift = [a, beta, delta, gamma](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(2);
        f(0) = a * x(0) - beta * x(0) * x(1);
        f(1) = delta * x(0) * x(1) - gamma * x(1);
        return f;
    };
    auto control = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g(2, 1);
        g(0, 0) = 4.0 + std::sin(x(0)) * std::exp(-1.0 + std::cos(x(1)));
        g(1, 0) = 1.0 + std::exp(std::sin(x(0)) * std::cos(x(1)));
        return g;
    };
    ControlAffineSystem sys(2, 1, drift, control, Box{{-2.0, 2.0}, {-4.0, 4.0}},
                            FractionalOrderVector::uniform(alpha, 2), TimeKind::continuous);
    return BenchmarkSpec{
        "lotka", std::move(sys),
        {{"a", a}, {"beta", beta}, {"delta", delta}, {"gamma", gamma}, {"alpha", alpha}},
        FractionalOrderVector::uniform(alpha, 2)};
}

BenchmarkSpec make_logistic_map(double mu, double alpha) {
    auto drift = [mu](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(1);
        f(0) = mu * x(0) * (1.0 - x(0));
        return f;
    };
    auto control = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g(1, 1);
        g(0, 0) = 1.0 - std::cos(x(0)) * std::exp(3.0 * (std::sin(x(0) - 0.7 * std::numbers::pi) - 1.0));
        return g;
    };
    ControlAffineSystem sys(1, 1, drift, control, Box{{0.0, 8.0}},
                            FractionalOrderVector::uniform(alpha, 1), TimeKind::discrete);
    return BenchmarkSpec{"logistic", std::move(sys), {{"mu", mu}, {"alpha", alpha}},
                         FractionalOrderVector::uniform(alpha, 1)};
}

BenchmarkSpec make_ultra_capacitor(double alpha) {
    auto drift = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(2);
        f(0) = x(1);
        f(1) = 0.035311 * x(0) + 0.001815 * x(1);
        return f;
    };
    auto control = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g(2, 1);
        g(0, 0) = std::exp(std::sin(x(0)) * std::sin(x(1)));
        g(1, 0) = 1.0 + (x(0) + x(1)) * (x(0) + x(1));
        return g;
    };
    ControlAffineSystem sys(2, 1, drift, control, Box{{-1.0, 1.0}, {-0.3, 0.3}},
                            FractionalOrderVector::uniform(alpha, 2), TimeKind::discrete);
    return BenchmarkSpec{"ultracap", std::move(sys), {{"alpha", alpha}},
                         FractionalOrderVector::uniform(alpha, 2)};
}

const std::vector<std::string>& benchmark_names() {
    static const std::vector<std::string> names = {"vanderpol", "lotka", "logistic", "ultracap"};
    return names;
}

BenchmarkSpec make_benchmark(const std::string& name, double alpha_override) {
    const bool has_alpha = alpha_override > 0.0;
    if (name == "vanderpol") return make_van_der_pol(0.5, has_alpha ? alpha_override : 0.9);
    if (name == "lotka")
        return make_lotka_volterra(0.5, 0.5, 1.3, 0.6, has_alpha ? alpha_override : 0.98);
    if (name == "logistic") return make_logistic_map(1.0, has_alpha ? alpha_override : 0.6);
    if (name == "ultracap") return make_ultra_capacitor(has_alpha ? alpha_override : 0.2);
    std::string known;
    for (const auto& b : benchmark_names()) known += (known.empty() ? "" : ", ") + b;
    throw UsageError("unknown benchmark '" + name + "' (valid: " + known + ")");
}

}  // namespace fracdyn
