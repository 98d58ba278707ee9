#pragma once

#include <functional>

namespace edgeaware {

/// Worker count from EDGEAWARE_THREADS (0 or 1 = run on the calling thread).
/// Unset falls back to std::thread::hardware_concurrency().
int worker_count();

/// Splits [0, count) into contiguous chunks and runs `body(begin, end)` on
/// each, possibly concurrently. Returns after every chunk has finished.
void parallel_for(int count, const std::function<void(int begin, int end)>& body);

}  // namespace edgeaware
