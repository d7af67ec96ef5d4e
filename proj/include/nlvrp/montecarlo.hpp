#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

#include "nlvrp/behavior.hpp"
#include "nlvrp/game.hpp"

namespace nlvrp {

struct SimulationReport {
    std::uint64_t rounds = 0;
    std::uint64_t seed = 0;
    double empirical_mean = 0.0;
    double analytic_mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(rounds)
    double z_score = 0.0;    // |empirical - analytic| / std_error, 0 when degenerate
    double chi_square = 0.0; // conditional (l1,l2)|(t1,t2) frequency fit
    std::array<std::array<std::uint64_t, 4>, 4> joint_counts{};  // rows t, cols l
};

struct RoundLogRow {
    std::uint64_t round;
    int t1, t2, l1, l2;
    double payoff;
};

// Samples `rounds` delivery rounds: the type pair from the prior, then the
// tollway pair from the behavior's row, both by inverse CDF in fixed cell
// order. Rounds are processed in fixed-size blocks, each on its own RNG stream
// derived from the seed, and block partials combine in block order — the
// parallel and serial entry points return identical reports.
SimulationReport simulate_rounds(const PayoffTable& table, const TypePrior& prior,
                                 const Behavior& b, std::uint64_t rounds, std::uint64_t seed,
                                 std::vector<RoundLogRow>* log = nullptr);

// Reference implementation: same blocking, plain loop.
SimulationReport simulate_rounds_serial(const PayoffTable& table, const TypePrior& prior,
                                        const Behavior& b, std::uint64_t rounds,
                                        std::uint64_t seed,
                                        std::vector<RoundLogRow>* log = nullptr);

// CSV with header round,t1,t2,l1,l2,payoff.
void write_round_log_csv(const std::vector<RoundLogRow>& log, std::ostream& out);

} // namespace nlvrp
