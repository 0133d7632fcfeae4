#pragma once

#include <cstddef>
#include <functional>

namespace corrgraph {

/// Upper bound on worker threads; 0 means hardware concurrency.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; bodies
/// must only write to index-owned storage so results do not depend on
/// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace corrgraph
