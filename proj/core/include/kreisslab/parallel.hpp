#pragma once

#include <cstddef>
#include <functional>

namespace kreisslab {

/// Runs body(i) for i in [0, n) on up to `threads` worker threads. Each index
/// must write only its own output slot, so results never depend on the
/// thread count. If several indices throw, the exception from the smallest
/// index is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

/// Thread count from KREISSLAB_THREADS if set and positive, else `fallback`.
int threads_from_environment(int fallback);

}  // namespace kreisslab
