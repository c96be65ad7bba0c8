#pragma once

#include <cstddef>
#include <functional>

namespace spectral_reach {

/// Worker count: hardware concurrency, capped by SPECTRAL_REACH_THREADS when set.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Tasks must
/// write only to their own output slots; results are therefore independent
/// of scheduling. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace spectral_reach
