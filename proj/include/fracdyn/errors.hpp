#pragma once

#include <stdexcept>
#include <string>

namespace fracdyn {

// Error classes map onto CLI exit codes: usage = 2, data = 3, numerical = 4.

/// Invalid arguments, configuration, or misuse of an interface.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Experiment data is degenerate or a simulation produced unusable states.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A simulated state became non-finite. Carries the offending step index.
class SimulationDiverged : public DataError {
public:
    SimulationDiverged(const std::string& msg, long step)
        : DataError(msg + " (step " + std::to_string(step) + ")"), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

/// Every sample for some state component fell below the excitation floor.
class InsufficientExcitation : public DataError {
public:
    explicit InsufficientExcitation(const std::string& msg) : DataError(msg) {}
};

/// Order-determination equations have no admissible solution.
class InconsistentData : public DataError {
public:
    explicit InconsistentData(const std::string& msg) : DataError(msg) {}
};

/// Numerical failure in a solver.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Regression matrix is rank deficient. Carries a condition estimate.
class IllPosedError : public NumericalError {
public:
    IllPosedError(const std::string& msg, double cond_estimate)
        : NumericalError(msg + " (condition estimate " + std::to_string(cond_estimate) + ")"),
          cond_(cond_estimate) {}
    double condition_estimate() const { return cond_; }

private:
    double cond_;
};

}  // namespace fracdyn
