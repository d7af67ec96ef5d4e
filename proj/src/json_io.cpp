#include "nlvrp/json_io.hpp"

#include <fstream>

namespace nlvrp {

namespace {

double number_at(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw InputError(std::string("missing or non-numeric field \"") + key + "\"");
    }
    return j.at(key).get<double>();
}

} // namespace

nlohmann::json to_json(const Behavior& b) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : b.table()) {
        rows.push_back(nlohmann::json(row));
    }
    return nlohmann::json{{"table", rows}};
}

Behavior behavior_from_json(const nlohmann::json& j) {
    if (!j.contains("table") || !j.at("table").is_array() || j.at("table").size() != 4) {
        throw InputError("behavior JSON must hold a 4x4 \"table\"");
    }
    ProbTable table{};
    for (int row = 0; row < 4; ++row) {
        const auto& jrow = j.at("table").at(row);
        if (!jrow.is_array() || jrow.size() != 4) {
            throw InputError("behavior JSON must hold a 4x4 \"table\"");
        }
        for (int col = 0; col < 4; ++col) {
            if (!jrow.at(col).is_number()) throw InputError("behavior table entries must be numbers");
            table[row][col] = jrow.at(col).get<double>();
        }
    }
    return Behavior::from_table(table);
}

nlohmann::json to_json(const QuantumStrategy& q) {
    return nlohmann::json{
        {"theta", q.theta}, {"a0", q.a0}, {"a1", q.a1}, {"b0", q.b0}, {"b1", q.b1}};
}

QuantumStrategy quantum_strategy_from_json(const nlohmann::json& j) {
    return QuantumStrategy{number_at(j, "theta"), number_at(j, "a0"), number_at(j, "a1"),
                           number_at(j, "b0"), number_at(j, "b1")};
}

GameConfig game_config_from_json(const nlohmann::json& j) {
    GameConfig config;
    config.game.base = VrpParams{number_at(j, "s"),   number_at(j, "l"), number_at(j, "u_s"),
                                 number_at(j, "u_l"), number_at(j, "x"), number_at(j, "y")};
    config.game.zeta = j.contains("zeta") ? number_at(j, "zeta") : 0.0;
    if (j.contains("prior")) {
        const auto& jp = j.at("prior");
        if (!jp.is_array() || jp.size() != 2 || !jp.at(0).is_array() || jp.at(0).size() != 2 ||
            !jp.at(1).is_array() || jp.at(1).size() != 2) {
            throw InputError("prior must be a 2x2 array");
        }
        std::array<std::array<double, 2>, 2> prior{};
        for (int i = 0; i < 2; ++i) {
            for (int k = 0; k < 2; ++k) {
                if (!jp.at(i).at(k).is_number()) throw InputError("prior entries must be numbers");
                prior[i][k] = jp.at(i).at(k).get<double>();
            }
        }
        config.prior = TypePrior::from_table(prior);
    }
    return config;
}

nlohmann::json to_json(const PayoffTable& table) {
    nlohmann::json totals = nlohmann::json::array();
    for (const auto& row : table.totals()) totals.push_back(nlohmann::json(row));
    nlohmann::json out{{"totals", totals}};
    if (table.parts()) {
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& row : *table.parts()) {
            nlohmann::json jrow = nlohmann::json::array();
            for (const auto& cell : row) {
                jrow.push_back({{"salary", cell.salary},
                                {"incentive", cell.incentive},
                                {"reward", cell.reward}});
            }
            parts.push_back(jrow);
        }
        out["components"] = parts;
    }
    return out;
}

PayoffTable payoff_table_from_json(const nlohmann::json& j) {
    if (j.contains("components")) {
        std::array<std::array<PayoffParts, 4>, 4> parts{};
        const auto& jp = j.at("components");
        for (int row = 0; row < 4; ++row) {
            for (int col = 0; col < 4; ++col) {
                const auto& cell = jp.at(row).at(col);
                parts[row][col] = PayoffParts{number_at(cell, "salary"),
                                              number_at(cell, "incentive"),
                                              number_at(cell, "reward")};
            }
        }
        return PayoffTable::from_parts(parts);
    }
    if (!j.contains("totals")) throw InputError("payoff table JSON needs \"totals\"");
    std::array<std::array<double, 4>, 4> totals{};
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            totals[row][col] = j.at("totals").at(row).at(col).get<double>();
        }
    }
    return PayoffTable::from_totals(totals);
}

nlohmann::json to_json(const SimulationReport& report) {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& row : report.joint_counts) counts.push_back(nlohmann::json(row));
    return nlohmann::json{{"rounds", report.rounds},
                          {"seed", report.seed},
                          {"empirical_mean", report.empirical_mean},
                          {"analytic_mean", report.analytic_mean},
                          {"std_error", report.std_error},
                          {"z_score", report.z_score},
                          {"chi_square", report.chi_square},
                          {"joint_counts", counts}};
}

namespace {

std::vector<double> axis_from_json(const nlohmann::json& j, const char* key,
                                   const std::vector<double>* fallback = nullptr) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw InputError(std::string("scan region is missing axis \"") + key + "\"");
    }
    const auto& axis = j.at(key);
    if (axis.is_number()) return {axis.get<double>()};
    if (axis.is_array()) {
        std::vector<double> values;
        for (const auto& v : axis) {
            if (!v.is_number()) throw InputError("axis entries must be numbers");
            values.push_back(v.get<double>());
        }
        if (values.empty()) throw InputError(std::string("axis \"") + key + "\" is empty");
        return values;
    }
    if (axis.is_object()) {
        const double lo = number_at(axis, "min");
        const double hi = number_at(axis, "max");
        const auto count = static_cast<std::size_t>(number_at(axis, "count"));
        if (count < 1) throw InputError("axis count must be at least 1");
        std::vector<double> values;
        for (std::size_t k = 0; k < count; ++k) {
            values.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) /
                                                        static_cast<double>(count - 1));
        }
        return values;
    }
    throw InputError(std::string("axis \"") + key + "\" must be a number, array or range");
}

} // namespace

RegionSpec region_from_json(const nlohmann::json& j) {
    RegionSpec region;
    region.s = axis_from_json(j, "s");
    region.l = axis_from_json(j, "l");
    region.u_s = axis_from_json(j, "u_s");
    region.u_l = axis_from_json(j, "u_l");
    region.x = axis_from_json(j, "x");
    region.y = axis_from_json(j, "y");
    const std::vector<double> zeta_default{0.0};
    region.zeta = axis_from_json(j, "zeta", &zeta_default);
    return region;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

} // namespace nlvrp
