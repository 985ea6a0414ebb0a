#pragma once

#include <Eigen/Dense>
#include <span>

#include "fracdyn/errors.hpp"

namespace fracdyn {

/// Per-state-component fractional orders. Each component must lie in (0, 1];
/// order 1 recovers the classic integer-order difference.
class FractionalOrderVector {
public:
    explicit FractionalOrderVector(Eigen::VectorXd orders);
    FractionalOrderVector(std::initializer_list<double> orders);

    /// n copies of the same order (commensurate system).
    static FractionalOrderVector uniform(double alpha, Eigen::Index n);

    Eigen::Index size() const { return orders_.size(); }
    double operator[](Eigen::Index i) const { return orders_(i); }
    const Eigen::VectorXd& values() const { return orders_; }

    /// Component-wise h^alpha_i.
    Eigen::ArrayXd pow_step(double h) const;

private:
    Eigen::VectorXd orders_;
};

/// Memory weight psi(alpha, j) = Gamma(j - alpha) / (Gamma(-alpha) Gamma(j + 1)),
/// computed by the multiplicative recursion
///   psi(alpha, 0) = 1,  psi(alpha, j) = psi(alpha, j-1) * (j - 1 - alpha) / j,
/// which is analytically identical and remains exact in the alpha = 1 limit.
double psi_coefficient(double alpha, long j);

/// Immutable table of psi(alpha_i, j) for j = 0..k_max, shared by all
/// simulation steps of one run.
class MemoryCoefficients {
public:
    MemoryCoefficients(FractionalOrderVector alpha, Eigen::Index k_max);

    Eigen::Index k_max() const { return table_.cols() - 1; }
    Eigen::Index dim() const { return table_.rows(); }
    const FractionalOrderVector& alpha() const { return alpha_; }

    /// psi(alpha, j) as an n-vector, j in [0, k_max].
    Eigen::VectorXd weight(Eigen::Index j) const;

    /// Sum_{l=1..j} psi(alpha, l) as an n-vector (0 for j = 0).
    Eigen::VectorXd cumulative(Eigen::Index j) const;

    const Eigen::MatrixXd& table() const { return table_; }

private:
    FractionalOrderVector alpha_;
    Eigen::MatrixXd table_;  // n x (k_max + 1)
    Eigen::MatrixXd cum_;    // n x (k_max + 1), cum_.col(j) = sum_{l=1..j} psi(:, l)
};

/// Memory term of the state update: with history = [x(k), x(k-1), ..., x(0)]
/// (newest first), returns sum_{j=1}^{k+1} psi(alpha, j) . x(k+1-j).
Eigen::VectorXd memory_sum(const MemoryCoefficients& coeffs,
                           std::span<const Eigen::VectorXd> history_newest_first);

/// Grunwald-Letnikov difference at step k over a recorded trajectory
/// x(0..end) (oldest first): sum_{j=0}^{k} psi(alpha, j) . x(k-j).
Eigen::VectorXd gl_difference(std::span<const Eigen::VectorXd> trajectory,
                              const FractionalOrderVector& alpha, Eigen::Index k);

}  // namespace fracdyn
