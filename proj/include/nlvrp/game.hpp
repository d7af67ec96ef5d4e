#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlvrp/behavior.hpp"

namespace nlvrp {

// The six game parameters: salaries s < l for small/large vehicles,
// incentives u_s < u_l, reward scales x < y for same-path/different-path
// travel. Feasible region:
//   0 < s < l,  l - s <= u_s < u_l,  0 < x < y < u_l + u_s + x.
struct VrpParams {
    double s, l, u_s, u_l, x, y;
};

struct TiltedVrpParams {
    VrpParams base;
    double zeta = 0.0;  // bonus; 2*zeta is added to the (t=11, l1=1) cells
};

struct ParamReport {
    bool valid = true;
    std::vector<std::string> violations;  // feasible-region failures
    std::vector<std::string> advisories;  // strict-mode entry audit, non-gating
};

// Validates the feasible region; in strict mode additionally audits the 18
// derived payoff entries (incentive/reward monotonicity and the no-congestion
// bound) and reports failures as advisories.
ParamReport validate_params(const VrpParams& p, bool strict = false);
void require_valid(const VrpParams& p);  // throws InvalidParams

struct PayoffParts {
    double salary = 0.0;
    double incentive = 0.0;
    double reward = 0.0;

    double total() const { return salary + incentive + reward; }
};

// 4x4 total payoffs, rows by vehicle-type pair, columns by tollway pair, with
// optional salary/incentive/reward breakdown.
class PayoffTable {
public:
    static PayoffTable from_totals(const std::array<std::array<double, 4>, 4>& totals);
    static PayoffTable from_parts(const std::array<std::array<PayoffParts, 4>, 4>& parts);

    double total(int t1, int t2, int l1, int l2) const {
        return totals_[pair_index(t1, t2)][pair_index(l1, l2)];
    }
    const std::array<std::array<double, 4>, 4>& totals() const { return totals_; }
    const std::optional<std::array<std::array<PayoffParts, 4>, 4>>& parts() const {
        return parts_;
    }

private:
    std::array<std::array<double, 4>, 4> totals_{};
    std::optional<std::array<std::array<PayoffParts, 4>, 4>> parts_;
};

// Distribution over the four vehicle-type pairs; defaults to uniform 1/4.
class TypePrior {
public:
    TypePrior() : p_{0.25, 0.25, 0.25, 0.25} {}
    static TypePrior from_table(const std::array<std::array<double, 2>, 2>& p);

    double p(int t1, int t2) const { return p_[pair_index(t1, t2)]; }
    bool is_uniform(double tol = kFeasTol) const;

private:
    std::array<double, 4> p_;
};

// Instantiates the 18 payoff entries from the six parameters: same-path
// columns {11,22} carry (salary, u_t, x_t), different-path columns {12,21}
// carry (salary, z_t, y_t) with all z_t = 0.
PayoffTable build_payoff_table(const VrpParams& p);

// Same table with +2*zeta incentive in the (t=11, l=11) and (t=11, l=12) cells.
PayoffTable build_tilted_payoff_table(const TiltedVrpParams& p);

// Expected total earnings sum_{t,l} prior(t) p(l|t) total(t,l).
double earnings(const PayoffTable& table, const TypePrior& prior, const Behavior& b);

// Uniform-prior closed form: earnings = base + coeff * CHSH / 8.
double closed_form_base(const VrpParams& p);   // l + s + (u_l + u_s + x + y)/2
double closed_form_coeff(const VrpParams& p);  // u_l + u_s + x - y, positive on the region
double earnings_closed_form(const VrpParams& p, const Behavior& b);

// Tilted earnings under the uniform prior, trace form (authoritative).
double tilted_earnings(const TiltedVrpParams& p, const Behavior& b);

// Base closed form plus zeta * m0 / 2; identical to the trace form.
double tilted_earnings_marginal_form(const TiltedVrpParams& p, const Behavior& b);

// base + coeff * (CHSH + 2 zeta m0) / 8. Agrees with the trace form only when
// coeff = 2; kept for side-by-side reporting.
double tilted_earnings_linear_form(const TiltedVrpParams& p, const Behavior& b);

// Total-payoff tensor for m postmen choosing among n tollways with k vehicle
// types, indexed by (type vector, path vector).
class GeneralVrp {
public:
    static constexpr std::size_t kDefaultCap = 1'000'000;

    using SalaryFn = std::function<double(int vehicle_type)>;
    // Tollway-and-flow payoffs; flow[v] counts vehicles of type v+1 on that tollway.
    using FlowFn = std::function<double(int tollway, std::span<const int> flow)>;

    GeneralVrp(int postmen, int tollways, int vehicle_types, std::vector<double> payoff,
               std::size_t cap = kDefaultCap);
    static GeneralVrp from_components(int postmen, int tollways, int vehicle_types,
                                      const SalaryFn& salary, const FlowFn& incentive,
                                      const FlowFn& reward, std::size_t cap = kDefaultCap);
    static GeneralVrp from_payoff_table(const PayoffTable& table);

    int postmen() const { return postmen_; }
    int tollways() const { return tollways_; }
    int vehicle_types() const { return vehicle_types_; }

    double payoff(std::span<const int> types, std::span<const int> paths) const;

    struct PathOptimum {
        std::vector<std::vector<int>> argmax_paths;  // lexicographic order
        double value;
    };

    // Exhaustive maximum over all n^m path vectors for the given type vector.
    PathOptimum optimal_path_configuration(std::span<const int> types) const;

private:
    int postmen_, tollways_, vehicle_types_;
    std::vector<double> payoff_;

    std::size_t type_offset(std::span<const int> types) const;
};

} // namespace nlvrp
