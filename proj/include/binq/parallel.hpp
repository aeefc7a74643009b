#pragma once

#include <cstddef>
#include <functional>

namespace binq {

// Resolves a requested worker count; 0 means hardware concurrency.
int resolve_threads(int requested);

// Runs fn(i) for every i in [0, n) on up to `threads` workers with static
// block partitioning. Callers must write results into per-index slots, which
// keeps every computed value independent of the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace binq
