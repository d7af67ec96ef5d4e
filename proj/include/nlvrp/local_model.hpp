#pragma once

#include <array>

#include "nlvrp/behavior.hpp"

namespace nlvrp {

// A mixture over the 16 deterministic strategies reproducing a behavior.
struct LocalModel {
    std::array<double, 16> weights;  // nonnegative, sums to 1, strategy index order

    Behavior reconstruct() const;
};

// Solves the feasibility program: nonnegative weights over the deterministic
// vertices matching the behavior's eight correlation parameters. Throws
// NotLocal when no such mixture exists. Deterministic for a given input.
LocalModel lhv_decomposition(const Behavior& b);

} // namespace nlvrp
