#pragma once

#include <cstddef>
#include <functional>

namespace pottslab {

/// Worker count: hardware concurrency capped by the POTTSLAB_THREADS
/// environment variable (1 disables parallelism).
int worker_count();

/// Runs fn(0..n-1) across workers. Each index must be independent and write
/// only to its own slot of any output; results are then identical for every
/// worker count, including 1. The first exception thrown by any task is
/// rethrown on the calling thread. workers_override > 0 bypasses worker_count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int workers_override = 0);

}  // namespace pottslab
