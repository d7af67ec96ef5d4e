#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "nlvrp/game.hpp"
#include "nlvrp/quantum.hpp"
#include "test_oracles.hpp"

using namespace nlvrp;

namespace {

const VrpParams kReference{1.0, 2.0, 1.0, 1.5, 1.0, 3.0};

Behavior all_ones_behavior() {
    return DeterministicStrategy{{1, 1}, {1, 1}}.to_behavior();
}

} // namespace

TEST_CASE("validate_params on the reference point and boundary failures") {
    CHECK(validate_params(kReference).valid);

    VrpParams p = kReference;
    p.l = p.s;
    CHECK_FALSE(validate_params(p).valid);

    p = kReference;
    p.y = p.u_l + p.u_s + p.x;  // boundary is excluded
    CHECK_FALSE(validate_params(p).valid);

    p = kReference;
    p.u_s = p.u_l;
    CHECK_FALSE(validate_params(p).valid);

    p = kReference;
    p.x = 0.0;
    CHECK_FALSE(validate_params(p).valid);
}

TEST_CASE("strict mode flags the reward-monotonicity gap and nothing else here") {
    // Reference point: y4 = x - (l-s) + u_s + u_l = 2.5 < y3 = 3, monotone.
    CHECK(validate_params(kReference, true).advisories.empty());

    // y close to x makes y4 = x - (l-s) + u_s + u_l exceed y3 = y.
    VrpParams p = kReference;
    p.y = 1.5;
    const ParamReport report = validate_params(p, true);
    CHECK(report.valid);
    REQUIRE(report.advisories.size() == 1);
    CHECK(report.advisories[0].find("y4") != std::string::npos);
}

TEST_CASE("build_payoff_table instantiates the derived entries") {
    const PayoffTable table = build_payoff_table(kReference);

    // t=11, same path: 2s + u1 + x1 with x1 = x + (l-s) + (u_l-u_s).
    CHECK(table.total(1, 1, 1, 1) == doctest::Approx(6.5).epsilon(1e-15));
    // t=22, different path: 2l + z4 + y4 with y4 = x - (l-s) + (u_s+u_l).
    CHECK(table.total(2, 2, 1, 2) == doctest::Approx(6.5).epsilon(1e-15));
    // t=22, same path: 2l + u4 + x4 with x4 = y - (l-s) - 2 u_l (negative reward).
    CHECK(table.total(2, 2, 1, 1) == doctest::Approx(6.0).epsilon(1e-15));
    REQUIRE(table.parts());
    CHECK((*table.parts())[3][0].reward == doctest::Approx(-1.0));

    // Column symmetry 11 = 22 and 12 = 21 in every row.
    for (int row = 0; row < 4; ++row) {
        CHECK(table.totals()[row][0] == table.totals()[row][3]);
        CHECK(table.totals()[row][1] == table.totals()[row][2]);
    }

    VrpParams bad = kReference;
    bad.y = 5.0;
    CHECK_THROWS_AS(build_payoff_table(bad), InvalidParams);
}

TEST_CASE("tilted table adds the bonus to the two first-row cells only") {
    const TiltedVrpParams tilted{kReference, 0.5};
    const PayoffTable base = build_payoff_table(kReference);
    const PayoffTable table = build_tilted_payoff_table(tilted);

    CHECK(table.total(1, 1, 1, 1) == doctest::Approx(7.5).epsilon(1e-15));
    CHECK(table.total(1, 1, 1, 2) == doctest::Approx(base.total(1, 1, 1, 2) + 1.0));
    CHECK(table.total(1, 1, 2, 1) == base.total(1, 1, 2, 1));
    CHECK(table.total(1, 1, 2, 2) == base.total(1, 1, 2, 2));
    for (int row = 1; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) CHECK(table.totals()[row][col] == base.totals()[row][col]);
    }

    const PayoffTable zero = build_tilted_payoff_table({kReference, 0.0});
    CHECK(zero.totals() == base.totals());
}

TEST_CASE("earnings on the named behaviors") {
    const PayoffTable table = build_payoff_table(kReference);
    const TypePrior prior;

    CHECK(earnings(table, prior, all_ones_behavior()) == doctest::Approx(6.375).epsilon(1e-15));
    CHECK(earnings(table, prior, pr_box()) == doctest::Approx(6.5).epsilon(1e-15));
    const Behavior quantum = behavior_from_quantum(canonical_chsh_strategy());
    CHECK(earnings(table, prior, quantum) ==
          doctest::Approx(6.25 + 0.5 * 2.0 * std::numbers::sqrt2 / 8.0).epsilon(1e-14));
}

TEST_CASE("closed form matches the trace form and has a positive slope") {
    CHECK(closed_form_base(kReference) == doctest::Approx(6.25));
    CHECK(closed_form_coeff(kReference) == doctest::Approx(0.5));
    CHECK(earnings_closed_form(kReference, all_ones_behavior()) == doctest::Approx(6.375));

    std::mt19937_64 rng(1234);
    const TypePrior prior;
    for (int iter = 0; iter < 1000; ++iter) {
        const VrpParams p = oracle::random_valid_params(rng);
        CHECK(closed_form_coeff(p) > 0.0);
        const PayoffTable table = build_payoff_table(p);
        const Behavior b = oracle::random_ns_behavior(rng);
        CHECK(std::abs(earnings(table, prior, b) - earnings_closed_form(p, b)) < 1e-10);
    }
}

TEST_CASE("tilted earnings: trace form, marginal identity, linear-form mismatch") {
    const TiltedVrpParams tilted{kReference, 0.5};
    const Behavior ones = all_ones_behavior();

    CHECK(tilted_earnings({kReference, 0.0}, ones) ==
          doctest::Approx(6.375).epsilon(1e-15));
    CHECK(tilted_earnings(tilted, ones) == doctest::Approx(6.625).epsilon(1e-15));
    CHECK(tilted_earnings_marginal_form(tilted, ones) == doctest::Approx(6.625).epsilon(1e-15));

    // The single-coefficient form disagrees here because coeff = 0.5 != 2.
    CHECK(tilted_earnings_linear_form(tilted, ones) == doctest::Approx(6.4375).epsilon(1e-15));

    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> zeta_dist(0.0, 2.0);
    for (int iter = 0; iter < 1000; ++iter) {
        const TiltedVrpParams p{oracle::random_valid_params(rng), zeta_dist(rng)};
        const Behavior b = oracle::random_ns_behavior(rng);
        CHECK(std::abs(tilted_earnings(p, b) - tilted_earnings_marginal_form(p, b)) < 1e-10);
    }
}

TEST_CASE("earnings are affine in the behavior") {
    std::mt19937_64 rng(31337);
    const PayoffTable table = build_payoff_table(kReference);
    const TypePrior prior;
    for (int iter = 0; iter < 100; ++iter) {
        const Behavior a = oracle::random_ns_behavior(rng);
        const Behavior b = oracle::random_ns_behavior(rng);
        for (const double lambda : {0.1, 0.5, 0.9}) {
            CHECK(std::abs(earnings(table, prior, mix(a, b, lambda)) -
                           (lambda * earnings(table, prior, a) +
                            (1 - lambda) * earnings(table, prior, b))) < 1e-12);
        }
    }
}

TEST_CASE("type prior validation") {
    CHECK(TypePrior{}.is_uniform());
    CHECK(TypePrior::from_table({{{0.25, 0.25}, {0.25, 0.25}}}).is_uniform());
    const TypePrior skewed = TypePrior::from_table({{{0.5, 0.5}, {0.0, 0.0}}});
    CHECK_FALSE(skewed.is_uniform());
    CHECK_THROWS_AS(TypePrior::from_table({{{0.5, 0.5}, {0.5, 0.5}}}), InvalidParams);
    CHECK_THROWS_AS(TypePrior::from_table({{{-0.5, 0.5}, {0.5, 0.5}}}), InvalidParams);
}

TEST_CASE("optimal_path_configuration on the reference 2x2x2 instance") {
    const GeneralVrp vrp = GeneralVrp::from_payoff_table(build_payoff_table(kReference));

    const auto both_small = vrp.optimal_path_configuration(std::array{1, 1});
    CHECK(both_small.value == doctest::Approx(6.5).epsilon(1e-15));
    REQUIRE(both_small.argmax_paths.size() == 2);
    CHECK(both_small.argmax_paths[0] == std::vector<int>{1, 1});
    CHECK(both_small.argmax_paths[1] == std::vector<int>{2, 2});

    const auto both_large = vrp.optimal_path_configuration(std::array{2, 2});
    CHECK(both_large.value == doctest::Approx(6.5).epsilon(1e-15));
    REQUIRE(both_large.argmax_paths.size() == 2);
    CHECK(both_large.argmax_paths[0] == std::vector<int>{1, 2});
    CHECK(both_large.argmax_paths[1] == std::vector<int>{2, 1});
}

TEST_CASE("single postman reduces to a row maximum") {
    const GeneralVrp vrp(1, 3, 2, {1.0, 5.0, 2.0, 4.0, 4.0, 3.0});
    const auto best = vrp.optimal_path_configuration(std::array{1});
    CHECK(best.value == 5.0);
    REQUIRE(best.argmax_paths.size() == 1);
    CHECK(best.argmax_paths[0] == std::vector<int>{2});

    const auto tie = vrp.optimal_path_configuration(std::array{2});
    CHECK(tie.value == 4.0);
    REQUIRE(tie.argmax_paths.size() == 2);
}

TEST_CASE("from_components folds salary, incentive and reward") {
    // Two postmen, two tollways, two types; reward drops with congestion.
    auto salary = [](int type) { return type == 1 ? 1.0 : 2.0; };
    auto incentive = [](int, std::span<const int> flow) {
        return 0.5 * (flow[0] + flow[1]);
    };
    auto reward = [](int, std::span<const int> flow) {
        return 3.0 / (flow[0] + flow[1]);
    };
    const GeneralVrp vrp = GeneralVrp::from_components(2, 2, 2, salary, incentive, reward);

    // Same tollway: each sees flow 2 -> payoff = salaries + 2*1.0 + 2*1.5.
    CHECK(vrp.payoff(std::array{1, 2}, std::array{1, 1}) ==
          doctest::Approx(1.0 + 2.0 + 2.0 * 0.5 * 2.0 + 2.0 * 1.5));
    // Split tollways: each sees flow 1 -> payoff = salaries + 2*0.5 + 2*3.0.
    CHECK(vrp.payoff(std::array{1, 2}, std::array{1, 2}) ==
          doctest::Approx(1.0 + 2.0 + 2.0 * 0.5 + 2.0 * 3.0));
}

TEST_CASE("tensor cap rejects oversized instances") {
    auto zero_flow = [](int, std::span<const int>) { return 0.0; };
    auto zero_salary = [](int) { return 0.0; };
    CHECK_THROWS_AS(GeneralVrp::from_components(8, 4, 4, zero_salary, zero_flow, zero_flow),
                    CapExceeded);
    CHECK_THROWS_AS(GeneralVrp::from_components(3, 2, 2, zero_salary, zero_flow, zero_flow, 100),
                    CapExceeded);
    CHECK_NOTHROW(GeneralVrp::from_components(3, 2, 2, zero_salary, zero_flow, zero_flow, 1000));
}

TEST_CASE("deterministic-strategy ceiling vs per-type path optimum") {
    // The prior-weighted sum of per-type optima bounds what any single
    // deterministic strategy can earn; at the reference point it is strict.
    const PayoffTable table = build_payoff_table(kReference);
    const GeneralVrp vrp = GeneralVrp::from_payoff_table(table);
    const TypePrior prior;

    double ceiling = 0.0;
    for (int t1 = 1; t1 <= 2; ++t1) {
        for (int t2 = 1; t2 <= 2; ++t2) {
            ceiling += prior.p(t1, t2) *
                       vrp.optimal_path_configuration(std::array{t1, t2}).value;
        }
    }

    double best_deterministic = -1e300;
    for (const auto& vertex : local_deterministic_vertices()) {
        best_deterministic = std::max(best_deterministic, earnings(table, prior, vertex));
    }

    CHECK(best_deterministic <= ceiling + 1e-12);
    MESSAGE("per-type ceiling ", ceiling, " vs best deterministic ", best_deterministic);
    CHECK(best_deterministic < ceiling - 0.1);  // strictly smaller at this point
}
