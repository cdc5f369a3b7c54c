#pragma once

#include <functional>

namespace mwave {

// Runs fn(k) for k in [0, n) across up to n_threads workers with a static
// contiguous partition. fn must only touch state disjoint per k; exceptions
// are rethrown on the calling thread (first one wins).
void parallel_for(int n, int n_threads, const std::function<void(int)>& fn);

// MWAVE_THREADS env var when set, hardware concurrency otherwise.
int default_thread_count();

}  // namespace mwave
