#pragma once

#include <cstddef>
#include <functional>

namespace polypack {

// Worker count: POLYPACK_THREADS when set (0 or absent = hardware default).
int thread_count();

// Runs fn over [0, n) in contiguous chunks, one worker per chunk. Callers
// write results into pre-sized slots indexed by position, so output is
// identical for every worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace polypack
