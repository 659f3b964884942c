#ifndef GAPFIELD_PARALLEL_HPP
#define GAPFIELD_PARALLEL_HPP

#include <cstddef>
#include <functional>

// Index-parallel loop over [0, n). Worker count is hardware concurrency capped
// by the GAPFIELD_THREADS environment variable; results must be written by
// index so output ordering does not depend on scheduling.

namespace gapfield {

unsigned worker_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gapfield

#endif
