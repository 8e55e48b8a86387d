#include "telegraph/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace telegraph {

int resolve_workers(int requested) {
#ifdef _OPENMP
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TELEGRAPH_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap > 0) return std::min(cap, omp_get_max_threads());
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
    return omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

}  // namespace telegraph
