#pragma once

#include <cstddef>
#include <functional>

namespace penpc {

// Resolves a requested worker count: values <= 0 mean "use the hardware
// concurrency" (at least 1).
int resolve_threads(int requested);

// Runs fn(i) for every i in [0, count) across `threads` workers, handing
// out indices through a shared atomic counter. fn must be safe to call
// concurrently; the first exception thrown by any worker is rethrown after
// all workers join. With threads <= 1 the loop runs inline.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace penpc
