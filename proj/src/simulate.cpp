#include "fracdyn/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace fracdyn {

namespace {

void check_history(const ControlAffineSystem& system,
                   std::span<const Eigen::VectorXd> history) {
    if (history.empty()) throw UsageError("step requires a nonempty history");
    if (history.front().size() != system.state_dim())
        throw UsageError("history state dimension does not match the system");
}

void check_input(const ControlAffineSystem& system, const Eigen::VectorXd& u) {
    if (u.size() != system.input_dim())
        throw UsageError("input dimension does not match the system");
}

Eigen::VectorXd field_value(const ControlAffineSystem& system, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& u) {
    return system.drift(x) + system.control(x) * u;
}

// Simulation loop shared by both time kinds. States are kept in a buffer
// filled back to front so that the newest-first history at step k is the
// contiguous span buf[K-k .. K].
template <class StepFn>
Trajectory run(const ControlAffineSystem& system, const Eigen::VectorXd& x0,
               std::span<const Eigen::VectorXd> inputs, Eigen::Index horizon, double h,
               bool record_history, StepFn&& step) {
    if (horizon < 1) throw UsageError("horizon must be at least 1");
    if (static_cast<Eigen::Index>(inputs.size()) != horizon)
        throw UsageError("inputs length must equal the horizon");
    if (x0.size() != system.state_dim())
        throw UsageError("initial state dimension does not match the system");

    const Eigen::Index K = horizon;
    std::vector<Eigen::VectorXd> buf(static_cast<std::size_t>(K) + 1);
    buf[static_cast<std::size_t>(K)] = x0;

    MemoryCoefficients coeffs(system.alpha(), K);
    for (Eigen::Index k = 0; k < K; ++k) {
        std::span<const Eigen::VectorXd> history(&buf[static_cast<std::size_t>(K - k)],
                                                 static_cast<std::size_t>(k) + 1);
        Eigen::VectorXd next = step(history, inputs[static_cast<std::size_t>(k)], coeffs);
        if (!next.allFinite())
            throw SimulationDiverged("state became non-finite", static_cast<long>(k) + 1);
        buf[static_cast<std::size_t>(K - k - 1)] = std::move(next);
    }

    Trajectory traj;
    traj.time_kind = system.time_kind();
    traj.h = h;
    if (record_history) {
        traj.states.assign(buf.rbegin(), buf.rend());
        traj.inputs.assign(inputs.begin(), inputs.end());
    } else {
        traj.states.push_back(buf.front());
    }
    return traj;
}

}  // namespace

void SimulationConfig::validate() const {
    if (!(h > 0.0)) throw UsageError("step size h must be positive");
    if (horizon < 1) throw UsageError("horizon must be at least 1");
}

Eigen::VectorXd step_continuous(const ControlAffineSystem& system,
                                std::span<const Eigen::VectorXd> history,
                                const Eigen::VectorXd& u, double h,
                                const MemoryCoefficients& coeffs) {
    if (system.time_kind() != TimeKind::continuous)
        throw UsageError("step_continuous requires a continuous-time system");
    if (!(h > 0.0)) throw UsageError("step size h must be positive");
    check_history(system, history);
    check_input(system, u);

    const Eigen::Index k = static_cast<Eigen::Index>(history.size()) - 1;
    const Eigen::VectorXd& current = history.front();
    const Eigen::VectorXd& initial = history.back();
    const Eigen::ArrayXd h_alpha = system.alpha().pow_step(h);

    Eigen::VectorXd next = (h_alpha * field_value(system, current, u).array()).matrix();
    next -= memory_sum(coeffs, history);
    next += ((1.0 + coeffs.cumulative(k + 1).array()) * initial.array()).matrix();
    return next;
}

Eigen::VectorXd step_continuous(const ControlAffineSystem& system,
                                std::span<const Eigen::VectorXd> history,
                                const Eigen::VectorXd& u, double h) {
    check_history(system, history);
    MemoryCoefficients coeffs(system.alpha(), static_cast<Eigen::Index>(history.size()));
    return step_continuous(system, history, u, h, coeffs);
}

Eigen::VectorXd step_discrete(const ControlAffineSystem& system,
                              std::span<const Eigen::VectorXd> history,
                              const Eigen::VectorXd& u, const MemoryCoefficients& coeffs) {
    if (system.time_kind() != TimeKind::discrete)
        throw UsageError("step_discrete requires a discrete-time system");
    check_history(system, history);
    check_input(system, u);
    return field_value(system, history.front(), u) - memory_sum(coeffs, history);
}

Eigen::VectorXd step_discrete(const ControlAffineSystem& system,
                              std::span<const Eigen::VectorXd> history,
                              const Eigen::VectorXd& u) {
    check_history(system, history);
    MemoryCoefficients coeffs(system.alpha(), static_cast<Eigen::Index>(history.size()));
    return step_discrete(system, history, u, coeffs);
}

Trajectory simulate_continuous(const ControlAffineSystem& system, const Eigen::VectorXd& x0,
                               std::span<const Eigen::VectorXd> inputs,
                               const SimulationConfig& config) {
    config.validate();
    if (system.time_kind() != TimeKind::continuous)
        throw UsageError("simulate_continuous requires a continuous-time system");
    return run(system, x0, inputs, config.horizon, config.h, config.record_history,
               [&](std::span<const Eigen::VectorXd> history, const Eigen::VectorXd& u,
                   const MemoryCoefficients& coeffs) {
                   return step_continuous(system, history, u, config.h, coeffs);
               });
}

Trajectory simulate_discrete(const ControlAffineSystem& system, const Eigen::VectorXd& x0,
                             std::span<const Eigen::VectorXd> inputs, Eigen::Index horizon) {
    if (system.time_kind() != TimeKind::discrete)
        throw UsageError("simulate_discrete requires a discrete-time system");
    return run(system, x0, inputs, horizon, 1.0, true,
               [&](std::span<const Eigen::VectorXd> history, const Eigen::VectorXd& u,
                   const MemoryCoefficients& coeffs) {
                   return step_discrete(system, history, u, coeffs);
               });
}

Trajectory simulate(const ControlAffineSystem& system, const Eigen::VectorXd& x0,
                    std::span<const Eigen::VectorXd> inputs, const SimulationConfig& config) {
    if (system.time_kind() == TimeKind::continuous)
        return simulate_continuous(system, x0, inputs, config);
    Trajectory traj = simulate_discrete(system, x0, inputs, config.horizon);
    if (!config.record_history) {
        Trajectory tail;
        tail.time_kind = traj.time_kind;
        tail.h = traj.h;
        tail.states.push_back(traj.states.back());
        return tail;
    }
    return traj;
}

Eigen::VectorXd reinitialize(const Trajectory& trajectory, Eigen::Index at_step) {
    if (at_step < 0 || at_step >= static_cast<Eigen::Index>(trajectory.states.size()))
        throw UsageError("reinitialize step index out of range");
    return trajectory.states[static_cast<std::size_t>(at_step)];
}

}  // namespace fracdyn
