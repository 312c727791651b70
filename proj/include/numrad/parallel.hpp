#pragma once

#include <cstddef>
#include <functional>

namespace numrad {

/// Worker count for parallel loops: NUMRAD_THREADS when it holds a positive
/// integer, otherwise the hardware concurrency (at least 1).
std::size_t configured_workers();

/// Calls fn(chunk, begin, end) over contiguous chunks of [0, count) on up to
/// `workers` threads. Chunk boundaries depend only on count and workers.
/// The first exception thrown by any chunk is rethrown after all threads join.
void parallel_chunks(std::size_t count, std::size_t workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace numrad
