#pragma once

#include <cstddef>
#include <functional>

namespace gliomorph::detail {

// Worker cap: GLIOMORPH_THREADS if set (minimum 1), hardware concurrency
// otherwise.
int max_threads();

// Runs fn(i) for i in [0, n). Work items must be independent; each writes
// only to its own output slot, so results do not depend on scheduling.
// Nested calls run serially to avoid oversubscription.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gliomorph::detail
