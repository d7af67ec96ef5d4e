#pragma once

#include <array>

#include "nlvrp/behavior.hpp"

namespace nlvrp {

// Two-qubit strategy: the state cos(theta)|00> + sin(theta)|11> measured with
// planar observables cos(a)*sigma_z + sin(a)*sigma_x. The +1 eigenvalue maps
// to output label 1.
struct QuantumStrategy {
    double theta;     // Schmidt angle, canonical range [0, pi/4]
    double a0, a1;    // first party's angles for inputs t1 = 1, 2
    double b0, b1;    // second party's angles for inputs t2 = 1, 2
};

// Correlators and +-1 marginals of a 222 behavior: the data every affine
// payoff functional depends on.
struct Moments {
    std::array<double, 4> corr;         // <11>,<12>,<21>,<22>
    std::array<double, 2> marg_first;   // <A(a_t)>
    std::array<double, 2> marg_second;  // <B(b_t)>
};

// Closed-form moments: <A B> = cos(a)cos(b) + sin(2 theta) sin(a)sin(b),
// <A> = cos(a)cos(2 theta), <B> = cos(b)cos(2 theta).
Moments moments_of(const QuantumStrategy& q);
Moments moments_of(const Behavior& b);

// Cell (l1,l2) = (1 + e1 <A> + e2 <B> + e1 e2 <AB>)/4 with e = +1 for label 1.
Behavior behavior_from_moments(const Moments& m);
Behavior behavior_from_quantum(const QuantumStrategy& q);

double chsh_of(const Moments& m);

// theta = pi/4, measurements sigma_z, sigma_x against (sigma_z +- sigma_x)/sqrt(2);
// reaches CHSH = 2*sqrt(2).
QuantumStrategy canonical_chsh_strategy();

struct TiltedStrategy {
    QuantumStrategy strategy;
    double zeta;
};

// For theta in (0, pi/4]: second party's angles +-beta with tan(beta) =
// sin(2 theta), paired with the tilt zeta = 2/sqrt(1 + 2 tan^2(2 theta)) whose
// tilted expression this strategy maximizes. Throws DomainError outside the
// range.
TiltedStrategy tilted_optimal_strategy(double theta);

} // namespace nlvrp
