#pragma once

#include <functional>

namespace bcrk {

// Number of workers used by multistart searches.  The BCRK_THREADS
// environment variable, when set to a positive integer, caps it; otherwise
// hardware concurrency is used.
int worker_count();

// Runs fn(0) ... fn(n-1), possibly on several threads.  fn must only write to
// per-index storage; results are merged by the caller in index order, so the
// outcome never depends on the worker count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace bcrk
