#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace aus {

// Worker cap: AUS_THREADS if set, else hardware concurrency, at least 1.
int worker_count();

// Fixed chunk size so partial results do not depend on the worker count.
inline constexpr std::size_t kChunk = 4096;

std::size_t chunk_count(std::size_t n);

// Runs body(chunk_index, begin, end) over [0, n) split into kChunk pieces.
// Chunk boundaries are independent of threading; callers combine per-chunk
// results in chunk order to stay bit-reproducible.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

// Deterministic sum of term(i) for i in [0, n): per-chunk sums combined in order.
std::complex<double> deterministic_sum(
    std::size_t n, const std::function<std::complex<double>(std::size_t)>& term);

double deterministic_max(std::size_t n, const std::function<double(std::size_t)>& term);

}  // namespace aus
