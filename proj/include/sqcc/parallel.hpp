#pragma once

#include <cstddef>
#include <functional>

namespace sqcc {

/// Runs fn(i) for i in [0, n) on up to `threads` workers with a static block
/// partition. Results must be written to disjoint, preallocated slots so the
/// outcome is independent of the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace sqcc
