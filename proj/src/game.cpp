#include "nlvrp/game.hpp"

#include <cmath>
#include <sstream>

namespace nlvrp {

namespace {

// The 18 entries of the payoff structure for one parameter point.
struct DerivedEntries {
    std::array<double, 4> salary;  // per row: 2s, s+l, s+l, 2l
    std::array<double, 4> u, z, x, y;
};

DerivedEntries derive_entries(const VrpParams& p) {
    DerivedEntries e{};
    e.salary = {2.0 * p.s, p.s + p.l, p.s + p.l, 2.0 * p.l};
    e.u = {2.0 * p.u_s, p.u_s + p.u_l, p.u_s + p.u_l, 2.0 * p.u_l};
    e.z = {0.0, 0.0, 0.0, 0.0};
    e.x = {p.x + (p.l - p.s) + (p.u_l - p.u_s), p.x, p.x, p.y - (p.l - p.s) - 2.0 * p.u_l};
    e.y = {p.y + (p.l - p.s), p.y, p.y, p.x - (p.l - p.s) + (p.u_s + p.u_l)};
    return e;
}

} // namespace

ParamReport validate_params(const VrpParams& p, bool strict) {
    ParamReport report;
    auto fail = [&](const std::string& msg) {
        report.valid = false;
        report.violations.push_back(msg);
    };
    if (!(p.s > 0.0)) fail("s must be positive");
    if (!(p.s < p.l)) fail("s must be strictly below l");
    if (!(p.l - p.s <= p.u_s)) fail("u_s must be at least l - s");
    if (!(p.u_s < p.u_l)) fail("u_s must be strictly below u_l");
    if (!(p.x > 0.0)) fail("x must be positive");
    if (!(p.x < p.y)) fail("x must be strictly below y");
    if (!(p.y < p.u_l + p.u_s + p.x)) fail("y must be strictly below u_l + u_s + x");

    if (strict && report.valid) {
        const DerivedEntries e = derive_entries(p);
        auto advise = [&](const std::string& msg) { report.advisories.push_back(msg); };
        for (int j = 0; j < 3; ++j) {
            if (e.u[j] > e.u[j + 1]) advise("incentive u" + std::to_string(j + 1) + " exceeds u" + std::to_string(j + 2));
            if (e.z[j + 1] > e.z[j]) advise("incentive z" + std::to_string(j + 2) + " exceeds z" + std::to_string(j + 1));
            if (e.x[j + 1] > e.x[j]) advise("reward x" + std::to_string(j + 2) + " exceeds x" + std::to_string(j + 1));
            if (e.y[j + 1] > e.y[j]) advise("reward y" + std::to_string(j + 2) + " exceeds y" + std::to_string(j + 1));
        }
        if (e.z[0] > e.u[0]) advise("z1 exceeds u1");
        if (e.x[1] != e.x[2]) advise("x2 and x3 differ");
        if (e.y[1] != e.y[2]) advise("y2 and y3 differ");
        if (e.x[0] > e.y[3]) advise("x1 exceeds y4 (congestion-free bound)");
    }
    return report;
}

void require_valid(const VrpParams& p) {
    const ParamReport report = validate_params(p);
    if (!report.valid) {
        std::ostringstream os;
        os << "game parameters outside the feasible region:";
        for (const auto& v : report.violations) os << " " << v << ";";
        throw InvalidParams(os.str());
    }
}

PayoffTable PayoffTable::from_totals(const std::array<std::array<double, 4>, 4>& totals) {
    PayoffTable t;
    t.totals_ = totals;
    return t;
}

PayoffTable PayoffTable::from_parts(const std::array<std::array<PayoffParts, 4>, 4>& parts) {
    PayoffTable t;
    t.parts_ = parts;
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) t.totals_[row][col] = parts[row][col].total();
    }
    return t;
}

TypePrior TypePrior::from_table(const std::array<std::array<double, 2>, 2>& p) {
    TypePrior prior;
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double v = p[i][j];
            if (v < 0.0) throw InvalidParams("type prior entries must be nonnegative");
            prior.p_[i * 2 + j] = v;
            sum += v;
        }
    }
    if (std::abs(sum - 1.0) > kFeasTol) throw InvalidParams("type prior must sum to 1");
    return prior;
}

bool TypePrior::is_uniform(double tol) const {
    for (const double v : p_) {
        if (std::abs(v - 0.25) > tol) return false;
    }
    return true;
}

PayoffTable build_payoff_table(const VrpParams& p) {
    require_valid(p);
    const DerivedEntries e = derive_entries(p);
    std::array<std::array<PayoffParts, 4>, 4> parts{};
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            const bool same_path = col == 0 || col == 3;
            parts[row][col].salary = e.salary[row];
            parts[row][col].incentive = same_path ? e.u[row] : e.z[row];
            parts[row][col].reward = same_path ? e.x[row] : e.y[row];
        }
    }
    return PayoffTable::from_parts(parts);
}

PayoffTable build_tilted_payoff_table(const TiltedVrpParams& p) {
    if (p.zeta < 0.0) throw InvalidParams("zeta must be nonnegative");
    auto parts = *build_payoff_table(p.base).parts();
    parts[0][0].incentive += 2.0 * p.zeta;
    parts[0][1].incentive += 2.0 * p.zeta;
    return PayoffTable::from_parts(parts);
}

double earnings(const PayoffTable& table, const TypePrior& prior, const Behavior& b) {
    double total = 0.0;
    for (int t1 = 1; t1 <= 2; ++t1) {
        for (int t2 = 1; t2 <= 2; ++t2) {
            double row = 0.0;
            for (int l1 = 1; l1 <= 2; ++l1) {
                for (int l2 = 1; l2 <= 2; ++l2) {
                    row += b.prob(t1, t2, l1, l2) * table.total(t1, t2, l1, l2);
                }
            }
            total += prior.p(t1, t2) * row;
        }
    }
    return total;
}

double closed_form_base(const VrpParams& p) {
    return p.l + p.s + (p.u_l + p.u_s + p.x + p.y) / 2.0;
}

double closed_form_coeff(const VrpParams& p) {
    return p.u_l + p.u_s + p.x - p.y;
}

double earnings_closed_form(const VrpParams& p, const Behavior& b) {
    require_valid(p);
    return closed_form_base(p) + closed_form_coeff(p) * chsh_value(b) / 8.0;
}

double tilted_earnings(const TiltedVrpParams& p, const Behavior& b) {
    return earnings(build_tilted_payoff_table(p), TypePrior{}, b);
}

double tilted_earnings_marginal_form(const TiltedVrpParams& p, const Behavior& b) {
    const double m0 = b.prob(1, 1, 1, 1) + b.prob(1, 1, 1, 2);
    return earnings_closed_form(p.base, b) + p.zeta * m0 / 2.0;
}

double tilted_earnings_linear_form(const TiltedVrpParams& p, const Behavior& b) {
    require_valid(p.base);
    return closed_form_base(p.base) +
           closed_form_coeff(p.base) * tilted_value(b, p.zeta) / 8.0;
}

namespace {

std::size_t checked_tensor_size(int postmen, int tollways, int vehicle_types, std::size_t cap) {
    if (postmen < 1 || tollways < 1 || vehicle_types < 1) {
        throw InvalidParams("postmen, tollways and vehicle types must be positive");
    }
    std::size_t size = 1;
    auto mul = [&](std::size_t factor) {
        if (size > cap / factor) throw CapExceeded("payoff tensor exceeds the configured cap");
        size *= factor;
    };
    for (int i = 0; i < postmen; ++i) mul(static_cast<std::size_t>(vehicle_types));
    for (int i = 0; i < postmen; ++i) mul(static_cast<std::size_t>(tollways));
    if (static_cast<std::size_t>(postmen) * size > cap) {
        throw CapExceeded("payoff tensor exceeds the configured cap");
    }
    return size;
}

} // namespace

GeneralVrp::GeneralVrp(int postmen, int tollways, int vehicle_types, std::vector<double> payoff,
                       std::size_t cap)
    : postmen_(postmen), tollways_(tollways), vehicle_types_(vehicle_types),
      payoff_(std::move(payoff)) {
    const std::size_t expected = checked_tensor_size(postmen, tollways, vehicle_types, cap);
    if (payoff_.size() != expected) {
        throw InvalidParams("payoff tensor size does not match the instance dimensions");
    }
}

GeneralVrp GeneralVrp::from_components(int postmen, int tollways, int vehicle_types,
                                       const SalaryFn& salary, const FlowFn& incentive,
                                       const FlowFn& reward, std::size_t cap) {
    const std::size_t size = checked_tensor_size(postmen, tollways, vehicle_types, cap);
    std::vector<double> payoff(size);

    std::vector<int> types(postmen, 1), paths(postmen, 1);
    std::vector<std::vector<int>> flow(tollways, std::vector<int>(vehicle_types));
    std::size_t idx = 0;
    // Mixed-radix enumeration: the first postman is the most significant digit.
    while (true) {
        while (true) {
            for (auto& f : flow) std::fill(f.begin(), f.end(), 0);
            for (int i = 0; i < postmen; ++i) ++flow[paths[i] - 1][types[i] - 1];
            double total = 0.0;
            for (int i = 0; i < postmen; ++i) {
                const auto& f = flow[paths[i] - 1];
                total += salary(types[i]) + incentive(paths[i], f) + reward(paths[i], f);
            }
            payoff[idx++] = total;

            int pos = postmen - 1;
            while (pos >= 0 && paths[pos] == tollways) paths[pos--] = 1;
            if (pos < 0) break;
            ++paths[pos];
        }
        int pos = postmen - 1;
        while (pos >= 0 && types[pos] == vehicle_types) types[pos--] = 1;
        if (pos < 0) break;
        ++types[pos];
    }
    return GeneralVrp(postmen, tollways, vehicle_types, std::move(payoff), cap);
}

GeneralVrp GeneralVrp::from_payoff_table(const PayoffTable& table) {
    std::vector<double> payoff(16);
    for (int t1 = 1; t1 <= 2; ++t1) {
        for (int t2 = 1; t2 <= 2; ++t2) {
            for (int l1 = 1; l1 <= 2; ++l1) {
                for (int l2 = 1; l2 <= 2; ++l2) {
                    payoff[pair_index(t1, t2) * 4 + pair_index(l1, l2)] =
                        table.total(t1, t2, l1, l2);
                }
            }
        }
    }
    return GeneralVrp(2, 2, 2, std::move(payoff));
}

std::size_t GeneralVrp::type_offset(std::span<const int> types) const {
    if (static_cast<int>(types.size()) != postmen_) {
        throw InvalidParams("type vector length does not match the postman count");
    }
    std::size_t idx = 0;
    for (const int t : types) {
        if (t < 1 || t > vehicle_types_) throw InvalidParams("vehicle type out of range");
        idx = idx * vehicle_types_ + (t - 1);
    }
    std::size_t paths_count = 1;
    for (int i = 0; i < postmen_; ++i) paths_count *= tollways_;
    return idx * paths_count;
}

double GeneralVrp::payoff(std::span<const int> types, std::span<const int> paths) const {
    if (static_cast<int>(paths.size()) != postmen_) {
        throw InvalidParams("path vector length does not match the postman count");
    }
    std::size_t idx = 0;
    for (const int l : paths) {
        if (l < 1 || l > tollways_) throw InvalidParams("tollway out of range");
        idx = idx * tollways_ + (l - 1);
    }
    return payoff_[type_offset(types) + idx];
}

GeneralVrp::PathOptimum GeneralVrp::optimal_path_configuration(std::span<const int> types) const {
    const std::size_t base = type_offset(types);
    std::size_t paths_count = 1;
    for (int i = 0; i < postmen_; ++i) paths_count *= tollways_;

    PathOptimum best{{}, payoff_[base]};
    for (std::size_t flat = 0; flat < paths_count; ++flat) {
        const double v = payoff_[base + flat];
        if (best.argmax_paths.empty() || v > best.value) {
            best.value = v;
            best.argmax_paths.clear();
        }
        if (v == best.value) {
            std::vector<int> path(postmen_);
            std::size_t rem = flat;
            for (int i = postmen_ - 1; i >= 0; --i) {
                path[i] = static_cast<int>(rem % tollways_) + 1;
                rem /= tollways_;
            }
            best.argmax_paths.push_back(std::move(path));
        }
    }
    return best;
}

} // namespace nlvrp
