#pragma once

#include <cstddef>
#include <functional>

namespace eqnoeth {

/// Worker count for internal sweeps. Honors EQNOETH_THREADS (a cap, >= 1);
/// otherwise the hardware concurrency.
unsigned worker_count();

/// Runs body(begin, end, chunk_index) over [0, total) split into contiguous
/// chunks, one per worker. Chunk i always covers a range preceding chunk
/// i+1, so callers can merge per-chunk results in index order and get the
/// same answer as a serial loop.
void parallel_chunks(std::size_t total,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
                     unsigned workers = 0);

/// Number of chunks parallel_chunks will use for the given total/workers.
std::size_t chunk_count(std::size_t total, unsigned workers = 0);

}  // namespace eqnoeth
