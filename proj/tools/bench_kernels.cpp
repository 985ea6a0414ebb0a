// Times the data-parallel kernels (experiment-grid generation and field-error
// grids) on both execution paths and verifies the OpenMP results are
// bit-identical to the serial reference.

#include <chrono>
#include <cstdio>
#include <string>

#include "fracdyn/harness.hpp"
#include "fracdyn/learn.hpp"
#include "fracdyn/parallel.hpp"
#include "fracdyn/systems.hpp"

using namespace fracdyn;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

bool identical(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

void report(const std::string& name, double serial_ms, double omp_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx   %s\n", name.c_str(), serial_ms, omp_ms,
                serial_ms / omp_ms, equal ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", hardware_threads());
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        BenchmarkSpec bench = make_van_der_pol();
        ExperimentPlan plan;
        plan.M = 1500;
        plan.N = 60;
        plan.input_law.seed = 5;
        SimulationConfig sim;
        sim.h = 0.1;

        auto t0 = std::chrono::steady_clock::now();
        ExperimentDataset serial =
            generate_dataset_continuous(bench.system, plan, sim, Exec::serial);
        const double serial_ms = ms_since(t0);

        t0 = std::chrono::steady_clock::now();
        ExperimentDataset parallel =
            generate_dataset_continuous(bench.system, plan, sim, Exec::openmp);
        const double omp_ms = ms_since(t0);

        const bool equal = identical(serial.x1, parallel.x1) &&
                           identical(serial.x2, parallel.x2) &&
                           identical(serial.xt2, parallel.xt2);
        report("dataset grid (continuous)", serial_ms, omp_ms, equal);
    }

    {
        BenchmarkSpec bench = make_logistic_map();
        ExperimentPlan plan;
        plan.M = 4000;
        plan.N = 60;
        plan.input_law.lo = -0.5;
        plan.input_law.hi = 0.5;
        plan.input_law.seed = 5;

        auto t0 = std::chrono::steady_clock::now();
        ExperimentDataset serial = generate_dataset_discrete(bench.system, plan, Exec::serial);
        const double serial_ms = ms_since(t0);

        t0 = std::chrono::steady_clock::now();
        ExperimentDataset parallel = generate_dataset_discrete(bench.system, plan, Exec::openmp);
        const double omp_ms = ms_since(t0);

        const bool equal = identical(serial.x1, parallel.x1) &&
                           identical(serial.x3, parallel.x3) &&
                           identical(serial.xt3, parallel.xt3);
        report("dataset grid (discrete)", serial_ms, omp_ms, equal);
    }

    {
        BenchmarkSpec bench = make_lotka_volterra();
        ExperimentPlan plan;
        plan.M = 80;
        plan.N = 15;
        plan.input_law.seed = 5;
        SimulationConfig sim;
        sim.h = 0.1;
        auto datasets = design_experiments(bench.system, plan, sim);
        BasisSpec basis = BasisSpec::legendre(5, bench.system.domain());
        LearnedModel model = learn_dynamics(datasets, basis);

        auto t0 = std::chrono::steady_clock::now();
        ErrorReport serial = field_error_surface(bench.system, model, 1200, nullptr, Exec::serial);
        const double serial_ms = ms_since(t0);

        t0 = std::chrono::steady_clock::now();
        ErrorReport parallel =
            field_error_surface(bench.system, model, 1200, nullptr, Exec::openmp);
        const double omp_ms = ms_since(t0);

        const bool equal = serial.f_abs_error == parallel.f_abs_error &&
                           serial.g_abs_error == parallel.g_abs_error;
        report("field error grid", serial_ms, omp_ms, equal);
    }

    return 0;
}
