#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fracdyn/domain.hpp"
#include "fracdyn/frac_core.hpp"

namespace fracdyn {

enum class TimeKind { continuous, discrete };

std::string to_string(TimeKind kind);
TimeKind time_kind_from_string(const std::string& name);

/// Control-affine system: drift f(x) in R^n plus control matrix g(x) in
/// R^{n x m}, defined over a box domain. Evaluators must be pure; systems are
/// immutable after construction and safe to share across threads.
class ControlAffineSystem {
public:
    using DriftFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using ControlFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

    ControlAffineSystem(Eigen::Index state_dim, Eigen::Index input_dim, DriftFn drift,
                        ControlFn control, Box domain, FractionalOrderVector alpha,
                        TimeKind time_kind);

    Eigen::Index state_dim() const { return n_; }
    Eigen::Index input_dim() const { return m_; }
    const Box& domain() const { return domain_; }
    const FractionalOrderVector& alpha() const { return alpha_; }
    TimeKind time_kind() const { return time_kind_; }

    /// f(x); validates the evaluator's output dimension.
    Eigen::VectorXd drift(const Eigen::VectorXd& x) const;
    /// g(x); validates the n x m output shape.
    Eigen::MatrixXd control(const Eigen::VectorXd& x) const;

    /// Same system with a different order vector (used for order sweeps).
    ControlAffineSystem with_alpha(FractionalOrderVector alpha) const;

private:
    Eigen::Index n_;
    Eigen::Index m_;
    DriftFn drift_;
    ControlFn control_;
    Box domain_;
    FractionalOrderVector alpha_;
    TimeKind time_kind_;
};

/// A named benchmark system together with the parameter values it was built
/// from and the order used in the reference experiments.
struct BenchmarkSpec {
    std::string name;
    ControlAffineSystem system;
    std::map<std::string, double> default_params;
    FractionalOrderVector reference_alpha;
};

BenchmarkSpec make_van_der_pol(double epsilon = 0.5, double alpha = 0.9);
BenchmarkSpec make_lotka_volterra(double a = 0.5, double beta = 0.5, double delta = 1.3,
                                  double gamma = 0.6, double alpha = 0.98);
BenchmarkSpec make_logistic_map(double mu = 1.0, double alpha = 0.6);
BenchmarkSpec make_ultra_capacitor(double alpha = 0.2);

/// Names accepted by the CLI: vanderpol, lotka, logistic, ultracap.
const std::vector<std::string>& benchmark_names();

/// Builds a named benchmark, optionally overriding its order.
BenchmarkSpec make_benchmark(const std::string& name, double alpha_override = -1.0);

}  // namespace fracdyn
