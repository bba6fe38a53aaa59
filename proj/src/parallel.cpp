#include "telefid/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

#include "telefid/types.hpp"

namespace telefid {

int thread_count()
{
    const char* env = std::getenv("TELEFID_THREADS");
    if (env == nullptr || *env == '\0') return omp_get_max_threads();
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096)
        throw ParameterError(std::string("TELEFID_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<int>(n);
}

void configure_threads()
{
    omp_set_num_threads(thread_count());
}

}  // namespace telefid
