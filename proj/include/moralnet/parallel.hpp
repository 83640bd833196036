#pragma once

#include <omp.h>

namespace moralnet {

/// Thread count for an OpenMP region; non-positive requests mean "all cores".
inline int resolve_threads(int requested) {
  return requested > 0 ? requested : omp_get_max_threads();
}

}  // namespace moralnet
