#include "dines/runtime.hpp"

#if __has_include(<malloc.h>)
#include <malloc.h>
#endif

namespace dines {

void tune_allocator() {
#if defined(M_MMAP_MAX) && defined(M_TRIM_THRESHOLD)
  // Buffers at n = 1e5 reach the 32 MB mmap ceiling, so serve everything
  // from the heap and never trim it.
  mallopt(M_MMAP_MAX, 0);
  mallopt(M_TRIM_THRESHOLD, -1);
#endif
}

}  // namespace dines
