#pragma once

#include <cstddef>
#include <functional>

namespace eigedge {

/// Worker count: EIGEDGE_THREADS if set and > 0, hardware concurrency
/// when unset or 0.
int thread_count();

/// Runs fn over [0,n) split into contiguous chunks, one per worker.
/// Falls back to a plain call when n is small or one worker is configured.
/// Chunk boundaries are deterministic; callers that write disjoint ranges
/// get results bit-identical to the sequential loop.
void parallel_for(size_t n, const std::function<void(size_t, size_t)>& fn);

} // namespace eigedge
