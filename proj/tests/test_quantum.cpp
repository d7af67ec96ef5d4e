#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "nlvrp/behavior.hpp"
#include "nlvrp/optimize.hpp"
#include "nlvrp/quantum.hpp"
#include "test_oracles.hpp"

using namespace nlvrp;

namespace {

constexpr double kPi = std::numbers::pi;

QuantumStrategy random_strategy(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> theta_dist(0.0, kPi / 4.0);
    std::uniform_real_distribution<double> angle_dist(-kPi, kPi);
    return QuantumStrategy{theta_dist(rng), angle_dist(rng), angle_dist(rng), angle_dist(rng),
                           angle_dist(rng)};
}

} // namespace

TEST_CASE("closed-form probabilities match the state-vector computation") {
    std::mt19937_64 rng(314159);
    for (int iter = 0; iter < 1000; ++iter) {
        const QuantumStrategy q = random_strategy(rng);
        const Behavior b = behavior_from_quantum(q);
        const ProbTable expected = oracle::tensor_prob_table(q);
        for (int row = 0; row < 4; ++row) {
            for (int col = 0; col < 4; ++col) {
                CHECK(std::abs(b.table()[row][col] - expected[row][col]) < kAlgebraTol);
            }
        }
    }
}

TEST_CASE("quantum behaviors pass the no-signaling check") {
    std::mt19937_64 rng(271828);
    for (int iter = 0; iter < 500; ++iter) {
        const QuantumStrategy q = random_strategy(rng);
        CHECK(check_no_signaling(behavior_from_quantum(q).table()).ok);
    }
}

TEST_CASE("aligned measurements on the singlet-like state correlate perfectly") {
    const Behavior b = behavior_from_quantum(QuantumStrategy{kPi / 4.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(b.prob(1, 1, 1, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.prob(1, 1, 2, 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.prob(1, 1, 1, 2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(b.correlator(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("canonical strategy: Tsirelson value, flat marginals, nonlocal") {
    const QuantumStrategy q = canonical_chsh_strategy();
    CHECK(q.theta == kPi / 4.0);
    const Behavior b = behavior_from_quantum(q);
    CHECK(chsh_value(b) == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-14));
    for (int t = 1; t <= 2; ++t) {
        CHECK(b.marginal_first(t) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(b.marginal_second(t) == doctest::Approx(0.5).epsilon(1e-14));
    }
    CHECK_FALSE(certify_local(b).local);
}

TEST_CASE("product states stay local for any measurement angles") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle_dist(-kPi, kPi);
    for (int iter = 0; iter < 200; ++iter) {
        const QuantumStrategy q{0.0, angle_dist(rng), angle_dist(rng), angle_dist(rng),
                                angle_dist(rng)};
        CHECK(certify_local(behavior_from_quantum(q)).local);
    }
}

TEST_CASE("tilted_optimal_strategy values") {
    const TiltedStrategy at_pi4 = tilted_optimal_strategy(kPi / 4.0);
    CHECK(std::abs(at_pi4.zeta) < 1e-15);
    CHECK(at_pi4.strategy.b0 == doctest::Approx(kPi / 4.0).epsilon(1e-14));
    CHECK(at_pi4.strategy.b1 == doctest::Approx(-kPi / 4.0).epsilon(1e-14));

    const TiltedStrategy at_pi8 = tilted_optimal_strategy(kPi / 8.0);
    CHECK(at_pi8.zeta == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(at_pi8.strategy.b0 == doctest::Approx(std::atan(1.0 / std::numbers::sqrt2)).epsilon(1e-12));
    CHECK(at_pi8.strategy.a0 == 0.0);
    CHECK(at_pi8.strategy.a1 == doctest::Approx(kPi / 2.0));

    // Limiting behavior near theta -> 0+.
    const TiltedStrategy near_zero = tilted_optimal_strategy(1e-6);
    CHECK(near_zero.zeta == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(near_zero.strategy.b0 == doctest::Approx(0.0).epsilon(1e-5));

    CHECK_THROWS_AS(tilted_optimal_strategy(0.0), DomainError);
    CHECK_THROWS_AS(tilted_optimal_strategy(-0.1), DomainError);
    CHECK_THROWS_AS(tilted_optimal_strategy(1.0), DomainError);
}

TEST_CASE("CHSH stays below the Tsirelson bound on a strategy grid") {
    // Coarser grid than the acceptance run, enough for a unit check.
    const GridSearchResult result =
        quantum_grid_search(MomentObjective::chsh(), kPi / 12.0);
    CHECK(result.value <= 2.0 * std::numbers::sqrt2 + kFeasTol);
    CHECK(result.value > 2.7);  // the canonical point sits on this grid
}

TEST_CASE("tilted recipe is a local maximum of its tilted expression") {
    for (const double theta : {kPi / 12.0, kPi / 8.0, kPi / 6.0}) {
        const TiltedStrategy ts = tilted_optimal_strategy(theta);
        const MomentObjective obj = MomentObjective::tilted_expression(ts.zeta);
        const double at_recipe = obj.eval(moments_of(ts.strategy));

        // Independent check of the recipe value.
        const double s2t = std::sin(2.0 * theta);
        const double expected = 2.0 * std::sqrt(1.0 + s2t * s2t) +
                                ts.zeta * (1.0 + std::cos(2.0 * theta));
        CHECK(at_recipe == doctest::Approx(expected).epsilon(1e-12));

        const QuantumStrategy refined = refine_strategy(obj, ts.strategy, kPi / 24.0, 1e-7);
        CHECK(obj.eval(moments_of(refined)) <= at_recipe + 1e-6);
    }
}

TEST_CASE("moments round-trip through behavior tables") {
    std::mt19937_64 rng(5150);
    for (int iter = 0; iter < 300; ++iter) {
        const QuantumStrategy q = random_strategy(rng);
        const Moments direct = moments_of(q);
        const Moments via_table = moments_of(behavior_from_quantum(q));
        for (int k = 0; k < 4; ++k) CHECK(std::abs(direct.corr[k] - via_table.corr[k]) < kAlgebraTol);
        for (int k = 0; k < 2; ++k) {
            CHECK(std::abs(direct.marg_first[k] - via_table.marg_first[k]) < kAlgebraTol);
            CHECK(std::abs(direct.marg_second[k] - via_table.marg_second[k]) < kAlgebraTol);
        }
        CHECK(std::abs(chsh_of(direct) - chsh_value(behavior_from_quantum(q))) < kAlgebraTol);
    }
}
