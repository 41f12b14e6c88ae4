// Minimal data-parallel loop. Worker count comes from GME_THREADS (0 or unset = auto).
#pragma once

#include <functional>

namespace gme {

int worker_count();
void set_worker_count(int n);

// Calls fn(i) for i in [0, n). Each index runs exactly once; order is unspecified.
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace gme
