#pragma once

#include <cstddef>

#include <functional>

namespace seqsteer {

// Worker-thread cap: hardware concurrency, limited by the SEQSTEER_THREADS
// environment variable when set (minimum 1).
std::size_t max_threads();

// Runs fn(i) for i in [0, n) across worker threads. Work items must be
// independent; callers keep output deterministic by writing into
// index-addressed slots. Rethrows the first exception raised by any item.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace seqsteer
