#pragma once

#include <cstddef>
#include <functional>

namespace weyl {

/// Worker count: WEYL_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
std::size_t thread_count();

/// Runs body(0..count-1) on thread_count() workers. If any call throws, the
/// exception of the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace weyl
