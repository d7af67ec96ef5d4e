#include "nlvrp/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlvrp {

int worker_count() {
#ifdef _OPENMP
    int workers = omp_get_max_threads();
#else
    int workers = 1;
#endif
    if (const char* env = std::getenv("NONLOCAL_VRP_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1 && cap < workers) workers = cap;
        } catch (...) {
            // ignore unparsable values
        }
    }
    return workers < 1 ? 1 : workers;
}

} // namespace nlvrp
