#pragma once

#include <cstddef>
#include <functional>

namespace lozenge {

// Worker count: hardware concurrency capped by LOZENGE_THREADS when set.
unsigned worker_count();

// Runs body(i) for i in [0, n). Results must be written to per-index slots so
// the outcome does not depend on scheduling. Rethrows the exception of the
// lowest failing index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lozenge
