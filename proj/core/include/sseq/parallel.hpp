#pragma once

#include <cstddef>
#include <functional>

namespace sseq {

// Worker count: SSEQ_COALG_THREADS if set (>= 1), else the hardware count.
std::size_t thread_count();

// Runs fn(i) for i in [0, n). Exceptions from workers are rethrown. Calls made
// from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sseq
