#pragma once

#include <functional>

namespace rr {

/// Worker count for grid fan-out: hardware concurrency capped by the
/// RULED_RICCI_THREADS environment variable (values < 1 mean serial).
int worker_count();

/// Runs fn(i) for i in [0, n) across workers. Iterations must be
/// independent; exceptions are rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace rr
