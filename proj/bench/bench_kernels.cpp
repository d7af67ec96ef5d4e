// Timing comparison of the serial reference kernels against their OpenMP
// counterparts: Monte Carlo sampling, quantum grid search, advantage scan.
// Also verifies that both variants agree, which is the whole point of keeping
// the serial paths around.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nlvrp/montecarlo.hpp"
#include "nlvrp/optimize.hpp"
#include "nlvrp/parallel.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s %10.3f s %10.3f s %7.2fx   %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s, identical ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const std::uint64_t mc_rounds = quick ? 1'000'000 : 20'000'000;
    const double grid_step = quick ? std::numbers::pi / 16.0 : std::numbers::pi / 24.0;
    const int scan_points = quick ? 8 : 32;

    std::printf("workers: %d\n", nlvrp::worker_count());
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    const nlvrp::VrpParams params{1.0, 2.0, 1.0, 1.5, 1.0, 3.0};
    const nlvrp::PayoffTable table = nlvrp::build_payoff_table(params);
    const nlvrp::TypePrior prior;
    const nlvrp::Behavior behavior =
        nlvrp::behavior_from_quantum(nlvrp::canonical_chsh_strategy());

    {
        auto t0 = clock_type::now();
        const auto serial = nlvrp::simulate_rounds_serial(table, prior, behavior, mc_rounds, 7);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto parallel = nlvrp::simulate_rounds(table, prior, behavior, mc_rounds, 7);
        const double tp = seconds_since(t0);
        const bool same = serial.empirical_mean == parallel.empirical_mean &&
                          serial.std_error == parallel.std_error &&
                          serial.chi_square == parallel.chi_square &&
                          serial.joint_counts == parallel.joint_counts;
        char name[64];
        std::snprintf(name, sizeof(name), "monte-carlo %.0e rounds", static_cast<double>(mc_rounds));
        report(name, ts, tp, same);
    }

    {
        const auto objective = nlvrp::MomentObjective::chsh();
        auto t0 = clock_type::now();
        const auto serial = nlvrp::quantum_grid_search_serial(objective, grid_step);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto parallel = nlvrp::quantum_grid_search(objective, grid_step);
        const double tp = seconds_since(t0);
        const bool same = serial.value == parallel.value &&
                          serial.best.theta == parallel.best.theta &&
                          serial.best.a0 == parallel.best.a0 &&
                          serial.best.a1 == parallel.best.a1 &&
                          serial.best.b0 == parallel.best.b0 &&
                          serial.best.b1 == parallel.best.b1;
        char name[64];
        std::snprintf(name, sizeof(name), "grid search %lld evals",
                      static_cast<long long>(serial.evaluations));
        report(name, ts, tp, same);
    }

    {
        nlvrp::RegionSpec region;
        region.s = {1.0};
        region.l = {2.0};
        region.u_s = {1.0};
        region.u_l = {1.5};
        region.x = {1.0};
        for (int k = 0; k < scan_points; ++k) {
            region.y.push_back(1.2 + 2.0 * k / scan_points);
        }
        region.zeta = {0.0, 0.5};

        auto t0 = clock_type::now();
        const auto serial = nlvrp::advantage_scan(region, nlvrp::scan_search_settings(), false);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto parallel = nlvrp::advantage_scan(region, nlvrp::scan_search_settings(), true);
        const double tp = seconds_since(t0);
        bool same = serial.rows.size() == parallel.rows.size();
        for (std::size_t i = 0; same && i < serial.rows.size(); ++i) {
            same = serial.rows[i].classical == parallel.rows[i].classical &&
                   serial.rows[i].quantum == parallel.rows[i].quantum &&
                   serial.rows[i].ns == parallel.rows[i].ns;
        }
        char name[64];
        std::snprintf(name, sizeof(name), "advantage scan %zu rows", serial.rows.size());
        report(name, ts, tp, same);
    }

    return 0;
}
