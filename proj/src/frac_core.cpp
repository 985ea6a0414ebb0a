#include "fracdyn/frac_core.hpp"

#include <cmath>
#include <string>

namespace fracdyn {

namespace {

void check_order(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0 || !std::isfinite(alpha))
        throw UsageError("fractional order must lie in (0, 1], got " + std::to_string(alpha));
}

}  // namespace

FractionalOrderVector::FractionalOrderVector(Eigen::VectorXd orders) : orders_(std::move(orders)) {
    if (orders_.size() == 0) throw UsageError("fractional order vector must not be empty");
    for (Eigen::Index i = 0; i < orders_.size(); ++i) check_order(orders_(i));
}

FractionalOrderVector::FractionalOrderVector(std::initializer_list<double> orders)
    : FractionalOrderVector(Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
          orders.begin(), static_cast<Eigen::Index>(orders.size())))) {}

FractionalOrderVector FractionalOrderVector::uniform(double alpha, Eigen::Index n) {
    return FractionalOrderVector(Eigen::VectorXd::Constant(n, alpha));
}

Eigen::ArrayXd FractionalOrderVector::pow_step(double h) const {
    return Eigen::pow(h, orders_.array());
}

double psi_coefficient(double alpha, long j) {
    check_order(alpha);
    if (j < 0) throw UsageError("psi_coefficient requires j >= 0");
    double value = 1.0;
    for (long m = 1; m <= j; ++m) value *= (static_cast<double>(m) - 1.0 - alpha) / static_cast<double>(m);
    return value;
}

MemoryCoefficients::MemoryCoefficients(FractionalOrderVector alpha, Eigen::Index k_max)
    : alpha_(std::move(alpha)) {
    if (k_max < 0) throw UsageError("memory table length must be nonnegative");
    const Eigen::Index n = alpha_.size();
    table_.resize(n, k_max + 1);
    cum_.resize(n, k_max + 1);
    table_.col(0).setOnes();
    cum_.col(0).setZero();
    for (Eigen::Index j = 1; j <= k_max; ++j) {
        const double dj = static_cast<double>(j);
        table_.col(j) = table_.col(j - 1).cwiseProduct(
            ((dj - 1.0) - alpha_.values().array()).matrix() / dj);
        cum_.col(j) = cum_.col(j - 1) + table_.col(j);
    }
}

Eigen::VectorXd MemoryCoefficients::weight(Eigen::Index j) const {
    if (j < 0 || j > k_max()) throw UsageError("memory weight index out of range");
    return table_.col(j);
}

Eigen::VectorXd MemoryCoefficients::cumulative(Eigen::Index j) const {
    if (j < 0 || j > k_max()) throw UsageError("memory cumulative index out of range");
    return cum_.col(j);
}

Eigen::VectorXd memory_sum(const MemoryCoefficients& coeffs,
                           std::span<const Eigen::VectorXd> history_newest_first) {
    const Eigen::Index len = static_cast<Eigen::Index>(history_newest_first.size());
    if (len > coeffs.k_max())
        throw UsageError("history of length " + std::to_string(len) +
                         " exceeds memory table (k_max " + std::to_string(coeffs.k_max()) + ")");
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(coeffs.dim());
    for (Eigen::Index j = 1; j <= len; ++j)
        acc += coeffs.table().col(j).cwiseProduct(history_newest_first[j - 1]);
    return acc;
}

Eigen::VectorXd gl_difference(std::span<const Eigen::VectorXd> trajectory,
                              const FractionalOrderVector& alpha, Eigen::Index k) {
    if (k < 0 || k >= static_cast<Eigen::Index>(trajectory.size()))
        throw UsageError("gl_difference step index out of range");
    MemoryCoefficients coeffs(alpha, k);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(alpha.size());
    for (Eigen::Index j = 0; j <= k; ++j)
        acc += coeffs.table().col(j).cwiseProduct(trajectory[k - j]);
    return acc;
}

}  // namespace fracdyn
