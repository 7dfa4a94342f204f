#include "fenergy/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fenergy {

int thread_budget() {
#if defined(_OPENMP)
    int budget = omp_get_max_threads();
    if (const char* env = std::getenv("FENERGY_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1 && cap < budget) budget = cap;
        } catch (...) {
            // unreadable value: keep the OpenMP default
        }
    }
    return budget;
#else
    return 1;
#endif
}

}  // namespace fenergy
