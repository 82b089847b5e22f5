#pragma once

#include <omp.h>

namespace raop {

// 0 means "OpenMP default".
inline int resolve_threads(int requested) {
  return requested > 0 ? requested : omp_get_max_threads();
}

}  // namespace raop
