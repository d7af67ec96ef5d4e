#include "nlvrp/behavior.hpp"

#include <cmath>
#include <sstream>

namespace nlvrp {

namespace {

void require_probability_table(const ProbTable& table) {
    for (int row = 0; row < 4; ++row) {
        double sum = 0.0;
        for (int col = 0; col < 4; ++col) {
            const double v = table[row][col];
            if (!(v >= -kAlgebraTol) || !(v <= 1.0 + kAlgebraTol)) {
                std::ostringstream os;
                os << "entry (" << row << "," << col << ") = " << v << " outside [0,1]";
                throw NotAProbabilityTable(os.str());
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kAlgebraTol) {
            std::ostringstream os;
            os << "row " << row << " sums to " << sum;
            throw NotAProbabilityTable(os.str());
        }
    }
}

} // namespace

NsReport check_no_signaling(const ProbTable& table) {
    require_probability_table(table);
    NsReport report;
    // First party: p(l1=1 | t1) must not depend on t2.
    for (int t1 = 1; t1 <= 2; ++t1) {
        const auto& row_a = table[pair_index(t1, 1)];
        const auto& row_b = table[pair_index(t1, 2)];
        const double diff = (row_a[0] + row_a[1]) - (row_b[0] + row_b[1]);
        if (std::abs(diff) > kFeasTol) {
            report.ok = false;
            report.violations.push_back({1, t1, std::abs(diff)});
        }
    }
    // Second party: p(l2=1 | t2) must not depend on t1.
    for (int t2 = 1; t2 <= 2; ++t2) {
        const auto& row_a = table[pair_index(1, t2)];
        const auto& row_b = table[pair_index(2, t2)];
        const double diff = (row_a[0] + row_a[2]) - (row_b[0] + row_b[2]);
        if (std::abs(diff) > kFeasTol) {
            report.ok = false;
            report.violations.push_back({2, t2, std::abs(diff)});
        }
    }
    return report;
}

Behavior Behavior::from_table(const ProbTable& table) {
    const NsReport ns = check_no_signaling(table);
    if (!ns.ok) {
        std::ostringstream os;
        os << "marginals shift with the remote input:";
        for (const auto& v : ns.violations) {
            os << " party" << v.party << "/input" << v.input << " by " << v.magnitude;
        }
        throw SignalingInput(os.str());
    }
    return Behavior(table);
}

double Behavior::correlator(int t1, int t2) const {
    const auto& row = table_[pair_index(t1, t2)];
    return row[0] - row[1] - row[2] + row[3];
}

double Behavior::marginal_first(int t1) const {
    const auto& row_a = table_[pair_index(t1, 1)];
    const auto& row_b = table_[pair_index(t1, 2)];
    return 0.5 * ((row_a[0] + row_a[1]) + (row_b[0] + row_b[1]));
}

double Behavior::marginal_second(int t2) const {
    const auto& row_a = table_[pair_index(1, t2)];
    const auto& row_b = table_[pair_index(2, t2)];
    return 0.5 * ((row_a[0] + row_a[2]) + (row_b[0] + row_b[2]));
}

Behavior mix(const Behavior& a, const Behavior& b, double lambda) {
    ProbTable table;
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            table[row][col] = lambda * a.table()[row][col] + (1.0 - lambda) * b.table()[row][col];
        }
    }
    return Behavior::from_table(table);
}

Behavior behavior_from_params(const CorrelationParams& p) {
    ProbTable table;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double c = p.c[i][j];
            const double m = p.m[i];
            const double n = p.n[j];
            const double lo = std::max(0.0, m + n - 1.0);
            const double hi = std::min(m, n);
            if (m < -kAlgebraTol || m > 1.0 + kAlgebraTol || n < -kAlgebraTol ||
                n > 1.0 + kAlgebraTol || c < lo - kAlgebraTol || c > hi + kAlgebraTol) {
                std::ostringstream os;
                os << "infeasible tuple at inputs (" << i << "," << j << "): c=" << c
                   << " m=" << m << " n=" << n;
                throw InvalidParams(os.str());
            }
            auto& row = table[i * 2 + j];
            row[0] = c;
            row[1] = m - c;
            row[2] = n - c;
            row[3] = 1.0 - m - n + c;
        }
    }
    return Behavior::from_table(table);
}

CorrelationParams params_from_behavior(const Behavior& b) {
    CorrelationParams p;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            p.c[i][j] = b.prob(i + 1, j + 1, 1, 1);
        }
        p.m[i] = b.marginal_first(i + 1);
        p.n[i] = b.marginal_second(i + 1);
    }
    return p;
}

double chsh_value(const Behavior& b) {
    const double via_correlators = b.correlator(1, 1) + b.correlator(1, 2) +
                                   b.correlator(2, 1) - b.correlator(2, 2);
    const CorrelationParams q = params_from_behavior(b);
    const double via_params = 2.0 + 4.0 * (q.c[0][0] + q.c[0][1] + q.c[1][0] - q.c[1][1]) -
                              4.0 * (q.m[0] + q.n[0]);
    // Both routes must agree; legal no-signaling slack bounds the gap.
    if (std::abs(via_correlators - via_params) > 64.0 * kFeasTol) {
        throw Error("chsh_value: correlator and parameter forms disagree");
    }
    return via_correlators;
}

double tilted_value(const Behavior& b, double zeta) {
    const double m0 = b.prob(1, 1, 1, 1) + b.prob(1, 1, 1, 2);
    return chsh_value(b) + 2.0 * zeta * m0;
}

int DeterministicStrategy::index() const {
    return (first[0] - 1) * 8 + (first[1] - 1) * 4 + (second[0] - 1) * 2 + (second[1] - 1);
}

DeterministicStrategy DeterministicStrategy::from_index(int idx) {
    return DeterministicStrategy{
        {1 + ((idx >> 3) & 1), 1 + ((idx >> 2) & 1)},
        {1 + ((idx >> 1) & 1), 1 + (idx & 1)},
    };
}

Behavior DeterministicStrategy::to_behavior() const {
    ProbTable table{};
    for (int t1 = 1; t1 <= 2; ++t1) {
        for (int t2 = 1; t2 <= 2; ++t2) {
            table[pair_index(t1, t2)][pair_index(first[t1 - 1], second[t2 - 1])] = 1.0;
        }
    }
    return Behavior::from_table(table);
}

const std::array<DeterministicStrategy, 16>& all_deterministic_strategies() {
    static const auto strategies = [] {
        std::array<DeterministicStrategy, 16> out{};
        for (int idx = 0; idx < 16; ++idx) out[idx] = DeterministicStrategy::from_index(idx);
        return out;
    }();
    return strategies;
}

const std::vector<Behavior>& local_deterministic_vertices() {
    static const auto vertices = [] {
        std::vector<Behavior> out;
        out.reserve(16);
        for (const auto& s : all_deterministic_strategies()) out.push_back(s.to_behavior());
        return out;
    }();
    return vertices;
}

namespace {

Behavior pr_box_variant(int r, int s, int t) {
    ProbTable table{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const int target = ((x & y) ^ (r & x) ^ (s & y) ^ t) & 1;
                    if ((a ^ b) == target) table[x * 2 + y][a * 2 + b] = 0.5;
                }
            }
        }
    }
    return Behavior::from_table(table);
}

} // namespace

const std::vector<Behavior>& ns_extremal_vertices() {
    static const auto vertices = [] {
        std::vector<Behavior> out = local_deterministic_vertices();
        for (int r = 0; r < 2; ++r) {
            for (int s = 0; s < 2; ++s) {
                for (int t = 0; t < 2; ++t) {
                    out.push_back(pr_box_variant(r, s, t));
                }
            }
        }
        return out;
    }();
    return vertices;
}

Behavior pr_box() {
    return ns_extremal_vertices()[16];
}

const std::array<ChshRelabeling, 8>& chsh_relabelings() {
    // Single-minus patterns first, the standard orientation leading, then
    // their negations; ties in certify_local resolve to the earliest entry.
    static const std::array<ChshRelabeling, 8> relabelings = {{
        {{1, 1, 1, -1}},
        {{1, 1, -1, 1}},
        {{1, -1, 1, 1}},
        {{-1, 1, 1, 1}},
        {{-1, -1, -1, 1}},
        {{-1, -1, 1, -1}},
        {{-1, 1, -1, -1}},
        {{1, -1, -1, -1}},
    }};
    return relabelings;
}

double relabeled_chsh(const Behavior& b, const ChshRelabeling& r) {
    return r.signs[0] * b.correlator(1, 1) + r.signs[1] * b.correlator(1, 2) +
           r.signs[2] * b.correlator(2, 1) + r.signs[3] * b.correlator(2, 2);
}

LocalityVerdict certify_local(const Behavior& b) {
    LocalityVerdict verdict{true, chsh_relabelings()[0], 0.0};
    for (const auto& r : chsh_relabelings()) {
        const double v = std::abs(relabeled_chsh(b, r));
        if (v > verdict.witness_value) {
            verdict.witness_value = v;
            verdict.witness = r;
        }
    }
    verdict.local = verdict.witness_value <= 2.0 + kFeasTol;
    return verdict;
}

} // namespace nlvrp
