#include "nlvrp/local_model.hpp"

#include <cmath>
#include <vector>

namespace nlvrp {

namespace {

constexpr int kVertices = 16;
constexpr int kConstraints = 9;  // four joints, four marginals, normalization
constexpr double kPivotTol = 1e-11;

// Phase-1 simplex for A w = rhs, w >= 0, with Bland's rule. A has
// kConstraints rows over kVertices structural columns; rhs is nonnegative.
// Returns the residual sum of artificials at optimum and the basic solution.
double phase_one(const std::array<std::array<double, kVertices>, kConstraints>& a,
                 const std::array<double, kConstraints>& rhs,
                 std::array<double, kVertices>& solution) {
    constexpr int kCols = kVertices + kConstraints;
    std::array<std::array<double, kCols + 1>, kConstraints> tab{};
    std::array<int, kConstraints> basis{};
    for (int i = 0; i < kConstraints; ++i) {
        for (int j = 0; j < kVertices; ++j) tab[i][j] = a[i][j];
        tab[i][kVertices + i] = 1.0;
        tab[i][kCols] = rhs[i];
        basis[i] = kVertices + i;
    }
    // Reduced costs for min(sum of artificials) with the artificial basis.
    std::array<double, kCols> cost{};
    for (int j = 0; j < kCols; ++j) {
        double col_sum = 0.0;
        for (int i = 0; i < kConstraints; ++i) col_sum += tab[i][j];
        cost[j] = (j >= kVertices ? 1.0 : 0.0) - col_sum;
    }

    for (int iter = 0; iter < 4096; ++iter) {
        int entering = -1;
        for (int j = 0; j < kCols; ++j) {
            if (cost[j] < -kPivotTol) {
                entering = j;
                break;  // Bland: lowest index
            }
        }
        if (entering < 0) break;

        int leaving = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < kConstraints; ++i) {
            if (tab[i][entering] > kPivotTol) {
                const double ratio = tab[i][kCols] / tab[i][entering];
                if (leaving < 0 || ratio < best_ratio - kPivotTol ||
                    (std::abs(ratio - best_ratio) <= kPivotTol && basis[i] < basis[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leaving < 0) break;  // unbounded cannot happen here

        const double pivot = tab[leaving][entering];
        for (int j = 0; j <= kCols; ++j) tab[leaving][j] /= pivot;
        for (int i = 0; i < kConstraints; ++i) {
            if (i == leaving) continue;
            const double factor = tab[i][entering];
            if (factor == 0.0) continue;
            for (int j = 0; j <= kCols; ++j) tab[i][j] -= factor * tab[leaving][j];
        }
        const double cost_factor = cost[entering];
        for (int j = 0; j < kCols; ++j) cost[j] -= cost_factor * tab[leaving][j];
        basis[leaving] = entering;
    }

    solution.fill(0.0);
    double residual = 0.0;
    for (int i = 0; i < kConstraints; ++i) {
        if (basis[i] < kVertices) {
            solution[basis[i]] = tab[i][kCols];
        } else {
            residual += std::abs(tab[i][kCols]);
        }
    }
    return residual;
}

} // namespace

Behavior LocalModel::reconstruct() const {
    ProbTable table{};
    const auto& vertices = local_deterministic_vertices();
    for (int k = 0; k < kVertices; ++k) {
        for (int row = 0; row < 4; ++row) {
            for (int col = 0; col < 4; ++col) {
                table[row][col] += weights[k] * vertices[k].table()[row][col];
            }
        }
    }
    return Behavior::from_table(table);
}

LocalModel lhv_decomposition(const Behavior& b) {
    const CorrelationParams target = params_from_behavior(b);

    std::array<std::array<double, kVertices>, kConstraints> a{};
    std::array<double, kConstraints> rhs{};
    for (int k = 0; k < kVertices; ++k) {
        const auto& s = all_deterministic_strategies()[k];
        const double m[2] = {s.first[0] == 1 ? 1.0 : 0.0, s.first[1] == 1 ? 1.0 : 0.0};
        const double n[2] = {s.second[0] == 1 ? 1.0 : 0.0, s.second[1] == 1 ? 1.0 : 0.0};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) a[i * 2 + j][k] = m[i] * n[j];
        }
        a[4][k] = m[0];
        a[5][k] = m[1];
        a[6][k] = n[0];
        a[7][k] = n[1];
        a[8][k] = 1.0;
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) rhs[i * 2 + j] = target.c[i][j];
    }
    rhs[4] = target.m[0];
    rhs[5] = target.m[1];
    rhs[6] = target.n[0];
    rhs[7] = target.n[1];
    rhs[8] = 1.0;

    std::array<double, kVertices> weights{};
    const double residual = phase_one(a, rhs, weights);
    if (residual > kFeasTol) {
        throw NotLocal("no deterministic-strategy mixture reproduces the behavior");
    }

    double sum = 0.0;
    for (auto& w : weights) {
        if (w < 0.0) w = 0.0;  // drop sub-tolerance pivot noise
        sum += w;
    }
    for (auto& w : weights) w /= sum;
    return LocalModel{weights};
}

} // namespace nlvrp
