#pragma once

#include <cstddef>
#include <functional>

namespace porpob {

/// Worker count: `requested` if > 0, else hardware concurrency, capped by the
/// POR_POB_THREADS environment variable when set.
unsigned resolve_threads(unsigned requested = 0);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index runs
/// exactly once; callers write results into per-index slots so output does not
/// depend on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

} // namespace porpob
