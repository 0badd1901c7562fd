#pragma once

#include <cstddef>
#include <functional>

namespace zq {

/// Upper bound on worker threads for grid loops; 0 selects hardware concurrency.
void set_max_threads(int n);
int max_threads();

/// Calls body(i) for i in [0, count), split into contiguous chunks across
/// workers. Bodies must write disjoint outputs; results never depend on the
/// thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace zq
