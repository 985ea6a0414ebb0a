#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <utility>

#include "fracdyn/errors.hpp"

namespace fracdyn {

/// Axis-aligned box in state space.
struct Box {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    Box() = default;
    Box(Eigen::VectorXd lo_, Eigen::VectorXd hi_);
    Box(std::initializer_list<std::pair<double, double>> bounds);

    Eigen::Index dim() const { return lo.size(); }
    bool contains(const Eigen::VectorXd& x) const;
    double volume() const;
    /// Euclidean length of the box diagonal.
    double diameter() const;
};

}  // namespace fracdyn
