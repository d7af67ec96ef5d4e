#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <vector>

#include "nlvrp/behavior.hpp"
#include "nlvrp/game.hpp"
#include "nlvrp/quantum.hpp"

namespace nlvrp {

enum class StrategyClass { Classical, Quantum, NoSignaling };

struct OptimizationOutcome {
    StrategyClass strategy_class;
    double value;               // optimal earnings found
    Behavior witness_behavior;  // behavior achieving the value
    double witness_chsh;
    std::optional<DeterministicStrategy> deterministic_witness;
    std::optional<QuantumStrategy> quantum_witness;
    std::int64_t evaluations;
};

// Affine functional of a behavior's moments. Every earnings-type objective
// (game tables under a prior, CHSH, tilted expressions) is one of these, which
// keeps grid-search evaluations down to a dot product.
struct MomentObjective {
    double constant = 0.0;
    std::array<double, 4> corr_w{};    // weights on <11>,<12>,<21>,<22>
    std::array<double, 2> marg_first_w{};
    std::array<double, 2> marg_second_w{};

    double eval(const Moments& m) const {
        double v = constant;
        for (int i = 0; i < 4; ++i) v += corr_w[i] * m.corr[i];
        for (int i = 0; i < 2; ++i) {
            v += marg_first_w[i] * m.marg_first[i] + marg_second_w[i] * m.marg_second[i];
        }
        return v;
    }

    static MomentObjective from_game(const PayoffTable& table, const TypePrior& prior);
    static MomentObjective chsh();
    static MomentObjective tilted_expression(double zeta);  // CHSH + 2 zeta m0
};

struct GridSearchResult {
    QuantumStrategy best;
    double value;
    std::int64_t evaluations;
};

// Deterministic exhaustive search over theta in [0, pi/4] and the four
// measurement angles in [-pi, pi), all stepped by `step`. The parallel and
// serial variants return bitwise-identical results.
GridSearchResult quantum_grid_search(const MomentObjective& objective, double step,
                                     bool parallel = true);
GridSearchResult quantum_grid_search_serial(const MomentObjective& objective, double step);

// Coordinate pattern search: steps each coordinate by +-step, halving the step
// until it drops below step_tol. theta stays clamped to [0, pi/4]; angles wrap.
QuantumStrategy refine_strategy(const MomentObjective& objective, QuantumStrategy start,
                                double initial_step, double step_tol,
                                std::int64_t* evaluations = nullptr);

struct QuantumSearchSettings {
    double grid_step = std::numbers::pi / 24.0;
    double refine_step_tol = 1e-6;
    bool use_grid = true;  // seeds-only search when false
    std::vector<QuantumStrategy> seeds;
    bool parallel = true;
};

// Exact maxima by vertex enumeration; earnings are affine in the behavior so
// mixtures never improve. Ties resolve to the lowest strategy index.
OptimizationOutcome classical_optimum(const PayoffTable& table, const TypePrior& prior);
OptimizationOutcome ns_optimum(const PayoffTable& table, const TypePrior& prior);

// Grid-plus-refinement lower bound on the quantum optimum. The canonical
// strategy and an embedding of the best deterministic strategy are always
// refined alongside the grid optimum and any caller seeds, so the result
// never falls below the classical value.
OptimizationOutcome quantum_optimum(const PayoffTable& table, const TypePrior& prior,
                                    const QuantumSearchSettings& settings = {});

// Analytic quantum ceiling base + coeff * 2 sqrt(2) / 8 for the six-parameter
// family under the uniform prior.
double tsirelson_cap(const VrpParams& p);

// Quantum strategy matched to the game's tilt: the tilted-expression maximizer
// for effective tilt 2*zeta/coeff. Empty when that tilt reaches 2, where
// deterministic strategies are already optimal.
std::optional<TiltedStrategy> matched_tilted_strategy(const VrpParams& p, double zeta);

// Embeds a deterministic strategy as a product-state quantum strategy with
// angles 0 / -pi, reproducing its behavior exactly.
QuantumStrategy embed_deterministic(const DeterministicStrategy& s);

struct RegionSpec {
    std::vector<double> s, l, u_s, u_l, x, y;
    std::vector<double> zeta{0.0};
};

struct ScanRow {
    VrpParams params;
    double zeta;
    double classical, quantum, ns;
    double advantage;  // quantum - classical
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::size_t invalid_points = 0;
};

QuantumSearchSettings scan_search_settings();  // seeds-only defaults used per row

// One row per valid (params, zeta) grid point, in document order
// s, l, u_s, u_l, x, y, zeta. Invalid points are skipped and counted; throws
// EmptyRegion when nothing is valid. Row order is independent of parallelism.
ScanResult advantage_scan(const RegionSpec& region,
                          const QuantumSearchSettings& settings = scan_search_settings(),
                          bool parallel = true);

// CSV with header s,l,u_s,u_l,x,y,zeta,classical,quantum,ns,advantage and
// 9-significant-digit floats.
void write_scan_csv(const ScanResult& result, std::ostream& out);

} // namespace nlvrp
