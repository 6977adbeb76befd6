#pragma once

#include <cstddef>
#include <functional>

namespace subplanck {

/// Worker count: hardware concurrency, capped by SUBPLANCK_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Iterations must be independent; callers
/// write results into pre-sized slots so output order never depends on
/// scheduling. The first exception thrown by any iteration is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace subplanck
