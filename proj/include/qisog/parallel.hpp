#pragma once

#include <cstddef>
#include <functional>

namespace qisog {

// Worker cap shared by all parallel loops; 0 means hardware concurrency.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs fn(0..n-1) on up to max_threads() workers.  The first exception thrown
// by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace qisog
