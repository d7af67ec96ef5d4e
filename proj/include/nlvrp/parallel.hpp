#pragma once

namespace nlvrp {

// Worker count for parallel kernels: OpenMP's maximum, capped by the
// NONLOCAL_VRP_THREADS environment variable when set. Always >= 1.
int worker_count();

} // namespace nlvrp
