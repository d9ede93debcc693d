#pragma once
// Fork-join helper for the per-line transform sweeps and pointwise reaction
// loops. Work items are split into contiguous chunks with disjoint writes and
// no cross-thread reductions, so results are bitwise identical for any thread
// count.

#include <cstddef>
#include <functional>

namespace fracrd {

// n = 0 selects std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls fn(begin, end) over a partition of [0, count).
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace fracrd
