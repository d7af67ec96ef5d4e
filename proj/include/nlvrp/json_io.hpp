#pragma once

#include <string>

#include "json.hpp"
#include "nlvrp/behavior.hpp"
#include "nlvrp/game.hpp"
#include "nlvrp/montecarlo.hpp"
#include "nlvrp/optimize.hpp"
#include "nlvrp/quantum.hpp"

namespace nlvrp {

// Behaviors: {"table": [[4 x 4 probabilities]]}, rows (t1 t2) and columns
// (l1 l2) both in order 11,12,21,22.
nlohmann::json to_json(const Behavior& b);
Behavior behavior_from_json(const nlohmann::json& j);

// Strategies: {"theta","a0","a1","b0","b1"} in radians.
nlohmann::json to_json(const QuantumStrategy& q);
QuantumStrategy quantum_strategy_from_json(const nlohmann::json& j);

// Game config: {"s","l","u_s","u_l","x","y"} plus optional "zeta" (default 0)
// and optional 2x2 "prior" (default uniform).
struct GameConfig {
    TiltedVrpParams game;
    TypePrior prior;
};
GameConfig game_config_from_json(const nlohmann::json& j);

// Payoff-table export: 4x4 totals plus the component triples when present.
nlohmann::json to_json(const PayoffTable& table);
PayoffTable payoff_table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SimulationReport& report);

// Scan region: each axis a number, an array of numbers, or
// {"min","max","count"} for an inclusive linear grid; "zeta" defaults to [0].
RegionSpec region_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);  // throws InputError

} // namespace nlvrp
