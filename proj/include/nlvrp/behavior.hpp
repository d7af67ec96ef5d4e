#pragma once

#include <array>
#include <vector>

#include "nlvrp/errors.hpp"

namespace nlvrp {

// Tolerance tiers used across the engine: algebraic identities are held to
// kAlgebraTol, feasibility-style checks (no-signaling, LP residuals) to
// kFeasTol, reconstructions to kReconstructTol.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kFeasTol = 1e-9;
inline constexpr double kReconstructTol = 1e-7;

// Inputs t and outputs l both take values in {1,2}. Rows and columns of all
// 4x4 tables are ordered 11,12,21,22.
inline constexpr int pair_index(int first, int second) {
    return (first - 1) * 2 + (second - 1);
}

using ProbTable = std::array<std::array<double, 4>, 4>;

struct NsViolation {
    int party;  // 1 or 2: whose marginal moved with the other input
    int input;  // that party's input
    double magnitude;
};

struct NsReport {
    bool ok = true;
    std::vector<NsViolation> violations;
};

// Checks the four independent marginal-equality constraints of a normalized
// 4x4 table. Throws NotAProbabilityTable for negative entries or rows not
// summing to 1.
NsReport check_no_signaling(const ProbTable& table);

// Conditional probability table p(l1 l2 | t1 t2) of the two-party scenario
// with binary inputs and outputs. Immutable; construction validates
// normalization and no-signaling, so any live Behavior is a valid
// no-signaling correlation.
class Behavior {
public:
    static Behavior from_table(const ProbTable& table);

    const ProbTable& table() const { return table_; }

    double prob(int t1, int t2, int l1, int l2) const {
        return table_[pair_index(t1, t2)][pair_index(l1, l2)];
    }

    // <t1 t2>: expectation of the +-1 outcome product for that input pair.
    double correlator(int t1, int t2) const;

    // p(l1 = 1 | t1), averaged over the two rows it can be read from.
    double marginal_first(int t1) const;
    double marginal_second(int t2) const;

private:
    explicit Behavior(const ProbTable& table) : table_(table) {}
    ProbTable table_;
};

// Convex combination lambda*a + (1-lambda)*b, lambda in [0,1].
Behavior mix(const Behavior& a, const Behavior& b, double lambda);

// The eight-parameter form of a no-signaling behavior: joint outcome-1
// probabilities per input pair and outcome-1 marginals per party input.
// Index 0 is input value 1, index 1 is input value 2.
struct CorrelationParams {
    std::array<std::array<double, 2>, 2> c;  // c[i][j] = p(l1=1, l2=1 | inputs i,j)
    std::array<double, 2> m;                 // first party's outcome-1 marginals
    std::array<double, 2> n;                 // second party's outcome-1 marginals
};

// Row (i,j) becomes (c, m-c, n-c, 1-m-n+c). Throws InvalidParams when the
// positivity bounds max(0, m+n-1) <= c <= min(m, n) fail.
Behavior behavior_from_params(const CorrelationParams& p);
CorrelationParams params_from_behavior(const Behavior& b);

// CHSH expression <11>+<12>+<21>-<22>. Computed from the correlators and
// cross-checked against the closed form in the eight parameters.
double chsh_value(const Behavior& b);

// CHSH plus 2*zeta*m0 where m0 = p(l1=1 | t1=1).
double tilted_value(const Behavior& b, double zeta);

// One tollway choice per vehicle type for each postman.
struct DeterministicStrategy {
    std::array<int, 2> first;   // first postman's tollway for vehicle types 1,2
    std::array<int, 2> second;

    int index() const;  // lexicographic rank over (f1(1), f1(2), f2(1), f2(2))
    static DeterministicStrategy from_index(int idx);
    Behavior to_behavior() const;
};

const std::array<DeterministicStrategy, 16>& all_deterministic_strategies();

// The 16 product point-mass behaviors, in lexicographic strategy order.
const std::vector<Behavior>& local_deterministic_vertices();

// The 24 extremal no-signaling behaviors: the 16 local vertices followed by
// the 8 PR-box relabelings. pr_box() is the one with CHSH = 4.
const std::vector<Behavior>& ns_extremal_vertices();
Behavior pr_box();

// Sign pattern applied to the four correlators; every relabeling carries an
// odd number of minus signs.
struct ChshRelabeling {
    std::array<int, 4> signs;
};

const std::array<ChshRelabeling, 8>& chsh_relabelings();
double relabeled_chsh(const Behavior& b, const ChshRelabeling& r);

struct LocalityVerdict {
    bool local;
    ChshRelabeling witness;  // relabeling with the largest |value|
    double witness_value;    // that |value|
};

// Local iff every relabeled CHSH expression stays within [-2, 2] (kFeasTol
// slack).
LocalityVerdict certify_local(const Behavior& b);

} // namespace nlvrp
