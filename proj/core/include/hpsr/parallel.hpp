// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_PARALLEL_HPP
#define HPSR_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace hpsr {

// Worker count: min(hardware_concurrency, HPSR_THREADS) when the variable is
// set to a positive integer, else hardware_concurrency; at least 1.
int thread_count();

// Runs fn over [0, n) split into contiguous chunks, one chunk per worker.
// Callers must make chunks independent; the partition depends only on n and
// the worker count, never on scheduling.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t begin, std::size_t end)>& fn);

}  // namespace hpsr

#endif
