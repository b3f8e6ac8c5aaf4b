#pragma once

#include <cstddef>
#include <functional>

namespace riesz {

// Runs fn(i) for i in [0, n) on up to `threads` workers with a static block
// partition. Callers write results into per-index slots, so the output is
// identical to the serial run no matter how the blocks are scheduled.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

/// Hardware concurrency clamped to [1, 16].
unsigned default_thread_count();

} // namespace riesz
