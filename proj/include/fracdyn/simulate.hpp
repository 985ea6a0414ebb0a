#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "fracdyn/frac_core.hpp"
#include "fracdyn/systems.hpp"

namespace fracdyn {

struct SimulationConfig {
    double h = 0.1;             // step size (continuous systems)
    Eigen::Index horizon = 1;   // number of steps K
    bool record_history = true; // false keeps only the final state in the result

    void validate() const;
};

/// Recorded run: states x(0..K) and the zero-order-hold inputs u(0..K-1).
struct Trajectory {
    std::vector<Eigen::VectorXd> states;
    std::vector<Eigen::VectorXd> inputs;
    TimeKind time_kind = TimeKind::continuous;
    double h = 0.1;

    Eigen::Index steps() const { return static_cast<Eigen::Index>(inputs.size()); }
    double time_at(Eigen::Index k) const {
        return time_kind == TimeKind::continuous ? static_cast<double>(k) * h
                                                 : static_cast<double>(k);
    }
};

/// One step of the continuous-time discretization with full memory:
///   x(k+1) = h^alpha (f(x(k)) + g(x(k)) u) - sum_{j=1}^{k+1} psi(alpha,j) x(k+1-j)
///            + (I + sum_{j=1}^{k+1} psi(alpha,j)) x(0).
/// history is the trajectory so far, newest state first (x(k) at the front,
/// x(0) at the back).
Eigen::VectorXd step_continuous(const ControlAffineSystem& system,
                                std::span<const Eigen::VectorXd> history_newest_first,
                                const Eigen::VectorXd& u, double h,
                                const MemoryCoefficients& coeffs);
Eigen::VectorXd step_continuous(const ControlAffineSystem& system,
                                std::span<const Eigen::VectorXd> history_newest_first,
                                const Eigen::VectorXd& u, double h);

/// One step of the discrete-time update
///   x(k+1) = f(x(k)) + g(x(k)) u - sum_{j=1}^{k+1} psi(alpha,j) x(k+1-j).
Eigen::VectorXd step_discrete(const ControlAffineSystem& system,
                              std::span<const Eigen::VectorXd> history_newest_first,
                              const Eigen::VectorXd& u, const MemoryCoefficients& coeffs);
Eigen::VectorXd step_discrete(const ControlAffineSystem& system,
                              std::span<const Eigen::VectorXd> history_newest_first,
                              const Eigen::VectorXd& u);

/// Runs the continuous-time discretization from x0 under zero-order-hold
/// inputs; inputs.size() must equal config.horizon.
Trajectory simulate_continuous(const ControlAffineSystem& system, const Eigen::VectorXd& x0,
                               std::span<const Eigen::VectorXd> inputs,
                               const SimulationConfig& config);

Trajectory simulate_discrete(const ControlAffineSystem& system, const Eigen::VectorXd& x0,
                             std::span<const Eigen::VectorXd> inputs, Eigen::Index horizon);

/// Dispatches on system.time_kind().
Trajectory simulate(const ControlAffineSystem& system, const Eigen::VectorXd& x0,
                    std::span<const Eigen::VectorXd> inputs, const SimulationConfig& config);

/// Extracts x(k) as a fresh initial state with its memory discarded.
/// Restarting from the result treats it as the only history entry, which is
/// what makes the restarted trajectory deviate from the continued one for
/// fractional orders.
Eigen::VectorXd reinitialize(const Trajectory& trajectory, Eigen::Index at_step);

}  // namespace fracdyn
