#pragma once

#include <cstddef>
#include <functional>

namespace evco {

/// Worker count: EVCO_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
std::size_t thread_count();

/// Runs fn(0..n-1) on up to thread_count() threads. Each index runs exactly
/// once; the first exception (by index) is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace evco
