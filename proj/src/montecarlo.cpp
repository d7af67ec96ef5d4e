#include "nlvrp/montecarlo.hpp"

#include <cmath>
#include <cstdio>

#include "nlvrp/parallel.hpp"
#include "nlvrp/rng.hpp"

namespace nlvrp {

namespace {

constexpr std::uint64_t kRoundsPerBlock = 1 << 16;

struct BlockPartial {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::array<std::array<std::uint64_t, 4>, 4> counts{};
};

// Inverse-CDF draw over four cells in fixed order; the last positive cell
// absorbs any rounding shortfall.
int sample_cell(const std::array<double, 4>& p, double u) {
    double cum = 0.0;
    int last_positive = 0;
    for (int cell = 0; cell < 4; ++cell) {
        if (p[cell] > 0.0) last_positive = cell;
        cum += p[cell];
        if (u < cum) return cell;
    }
    return last_positive;
}

BlockPartial run_block(std::uint64_t block, std::uint64_t block_rounds, std::uint64_t seed,
                       const std::array<double, 4>& prior_cells, const ProbTable& behavior,
                       const std::array<std::array<double, 4>, 4>& totals,
                       RoundLogRow* log_rows) {
    SplitMix64 rng(derive_stream_seed(seed, block));
    BlockPartial out;
    for (std::uint64_t r = 0; r < block_rounds; ++r) {
        const int t_cell = sample_cell(prior_cells, rng.next_unit());
        const int l_cell = sample_cell(behavior[t_cell], rng.next_unit());
        const double payoff = totals[t_cell][l_cell];
        out.sum += payoff;
        out.sum_sq += payoff * payoff;
        ++out.counts[t_cell][l_cell];
        if (log_rows) {
            log_rows[r] = RoundLogRow{block * kRoundsPerBlock + r + 1, t_cell / 2 + 1,
                                      t_cell % 2 + 1, l_cell / 2 + 1, l_cell % 2 + 1, payoff};
        }
    }
    return out;
}

SimulationReport assemble(const std::vector<BlockPartial>& partials, std::uint64_t rounds,
                          std::uint64_t seed, double analytic, const ProbTable& behavior) {
    double sum = 0.0, sum_sq = 0.0;
    SimulationReport report;
    report.rounds = rounds;
    report.seed = seed;
    report.analytic_mean = analytic;
    for (const auto& part : partials) {
        sum += part.sum;
        sum_sq += part.sum_sq;
        for (int t = 0; t < 4; ++t) {
            for (int l = 0; l < 4; ++l) report.joint_counts[t][l] += part.counts[t][l];
        }
    }
    report.empirical_mean = sum / static_cast<double>(rounds);

    if (rounds >= 2) {
        double var = (sum_sq - sum * report.empirical_mean) / static_cast<double>(rounds - 1);
        if (var < 0.0) var = 0.0;  // cancellation on constant samples
        report.std_error = std::sqrt(var / static_cast<double>(rounds));
    }
    report.z_score = report.std_error > 0.0
                         ? std::abs(report.empirical_mean - report.analytic_mean) /
                               report.std_error
                         : 0.0;

    for (int t = 0; t < 4; ++t) {
        std::uint64_t row_total = 0;
        for (int l = 0; l < 4; ++l) row_total += report.joint_counts[t][l];
        if (row_total == 0) continue;
        for (int l = 0; l < 4; ++l) {
            const double expected = static_cast<double>(row_total) * behavior[t][l];
            if (expected <= 0.0) continue;
            const double diff = static_cast<double>(report.joint_counts[t][l]) - expected;
            report.chi_square += diff * diff / expected;
        }
    }
    return report;
}

SimulationReport simulate_impl(const PayoffTable& table, const TypePrior& prior,
                               const Behavior& b, std::uint64_t rounds, std::uint64_t seed,
                               std::vector<RoundLogRow>* log, bool parallel) {
    if (rounds < 1) throw InvalidParams("rounds must be at least 1");
    const std::array<double, 4> prior_cells = {prior.p(1, 1), prior.p(1, 2), prior.p(2, 1),
                                               prior.p(2, 2)};
    const ProbTable& behavior = b.table();
    const auto& totals = table.totals();
    const double analytic = earnings(table, prior, b);

    const std::uint64_t blocks = (rounds + kRoundsPerBlock - 1) / kRoundsPerBlock;
    std::vector<BlockPartial> partials(blocks);
    if (log) log->resize(rounds);

    auto block_rounds = [&](std::uint64_t block) {
        return block + 1 < blocks ? kRoundsPerBlock : rounds - block * kRoundsPerBlock;
    };
    auto log_ptr = [&](std::uint64_t block) -> RoundLogRow* {
        return log ? log->data() + block * kRoundsPerBlock : nullptr;
    };

    if (parallel) {
        const int workers = worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
#endif
        for (std::int64_t block = 0; block < static_cast<std::int64_t>(blocks); ++block) {
            partials[block] = run_block(block, block_rounds(block), seed, prior_cells,
                                        behavior, totals, log_ptr(block));
        }
        (void)workers;
    } else {
        for (std::uint64_t block = 0; block < blocks; ++block) {
            partials[block] = run_block(block, block_rounds(block), seed, prior_cells,
                                        behavior, totals, log_ptr(block));
        }
    }
    return assemble(partials, rounds, seed, analytic, behavior);
}

} // namespace

SimulationReport simulate_rounds(const PayoffTable& table, const TypePrior& prior,
                                 const Behavior& b, std::uint64_t rounds, std::uint64_t seed,
                                 std::vector<RoundLogRow>* log) {
    return simulate_impl(table, prior, b, rounds, seed, log, true);
}

SimulationReport simulate_rounds_serial(const PayoffTable& table, const TypePrior& prior,
                                        const Behavior& b, std::uint64_t rounds,
                                        std::uint64_t seed, std::vector<RoundLogRow>* log) {
    return simulate_impl(table, prior, b, rounds, seed, log, false);
}

void write_round_log_csv(const std::vector<RoundLogRow>& log, std::ostream& out) {
    out << "round,t1,t2,l1,l2,payoff\n";
    char buf[128];
    for (const auto& row : log) {
        std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%d,%d,%.9g\n",
                      static_cast<unsigned long long>(row.round), row.t1, row.t2, row.l1,
                      row.l2, row.payoff);
        out << buf;
    }
}

} // namespace nlvrp
