#include "nlvrp/quantum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nlvrp {

Moments moments_of(const QuantumStrategy& q) {
    const double c2t = std::cos(2.0 * q.theta);
    const double s2t = std::sin(2.0 * q.theta);
    const double cos_a[2] = {std::cos(q.a0), std::cos(q.a1)};
    const double sin_a[2] = {std::sin(q.a0), std::sin(q.a1)};
    const double cos_b[2] = {std::cos(q.b0), std::cos(q.b1)};
    const double sin_b[2] = {std::sin(q.b0), std::sin(q.b1)};

    Moments m{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m.corr[i * 2 + j] = cos_a[i] * cos_b[j] + s2t * sin_a[i] * sin_b[j];
        }
        m.marg_first[i] = cos_a[i] * c2t;
        m.marg_second[i] = cos_b[i] * c2t;
    }
    return m;
}

Moments moments_of(const Behavior& b) {
    Moments m{};
    for (int t1 = 1; t1 <= 2; ++t1) {
        for (int t2 = 1; t2 <= 2; ++t2) {
            m.corr[pair_index(t1, t2)] = b.correlator(t1, t2);
        }
        m.marg_first[t1 - 1] = 2.0 * b.marginal_first(t1) - 1.0;
        m.marg_second[t1 - 1] = 2.0 * b.marginal_second(t1) - 1.0;
    }
    return m;
}

Behavior behavior_from_moments(const Moments& m) {
    ProbTable table;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            auto& row = table[i * 2 + j];
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const double e1 = a == 0 ? 1.0 : -1.0;
                    const double e2 = b == 0 ? 1.0 : -1.0;
                    double cell = 0.25 * (1.0 + e1 * m.marg_first[i] + e2 * m.marg_second[j] +
                                          e1 * e2 * m.corr[i * 2 + j]);
                    if (cell < 0.0 && cell > -kAlgebraTol) cell = 0.0;
                    row[a * 2 + b] = cell;
                }
            }
        }
    }
    return Behavior::from_table(table);
}

Behavior behavior_from_quantum(const QuantumStrategy& q) {
    return behavior_from_moments(moments_of(q));
}

double chsh_of(const Moments& m) {
    return m.corr[0] + m.corr[1] + m.corr[2] - m.corr[3];
}

QuantumStrategy canonical_chsh_strategy() {
    const double pi = std::numbers::pi;
    return QuantumStrategy{pi / 4.0, 0.0, pi / 2.0, pi / 4.0, -pi / 4.0};
}

TiltedStrategy tilted_optimal_strategy(double theta) {
    const double pi = std::numbers::pi;
    if (!(theta > 0.0) || theta > pi / 4.0 + kAlgebraTol) {
        std::ostringstream os;
        os << "theta = " << theta << " outside (0, pi/4]";
        throw DomainError(os.str());
    }
    const double s2t = std::sin(2.0 * theta);
    const double c2t = std::cos(2.0 * theta);
    const double beta = std::atan(s2t);
    // 2/sqrt(1 + 2 tan^2) rewritten without the tangent blow-up at theta = pi/4.
    const double zeta = 2.0 * c2t / std::sqrt(1.0 + s2t * s2t);
    return TiltedStrategy{QuantumStrategy{theta, 0.0, pi / 2.0, beta, -beta}, zeta};
}

} // namespace nlvrp
