#pragma once

#include <cstddef>
#include <functional>

namespace geolab {

// Worker count: GEOLAB_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads. Results must be
// written to per-index slots by the caller so the merge stays deterministic. The
// first exception thrown (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace geolab
