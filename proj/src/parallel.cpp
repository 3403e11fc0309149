#include "aus/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <thread>
#include <vector>

namespace aus {

int worker_count() {
  if (const char* env = std::getenv("AUS_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t chunks = chunk_count(n);
  const int workers = std::min<std::size_t>(worker_count(), chunks ? chunks : 1);
  if (workers <= 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c)
      body(c, c * kChunk, std::min(n, (c + 1) * kChunk));
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = static_cast<std::size_t>(w); c < chunks; c += workers)
        body(c, c * kChunk, std::min(n, (c + 1) * kChunk));
    });
  }
  for (auto& t : pool) t.join();
}

std::complex<double> deterministic_sum(
    std::size_t n, const std::function<std::complex<double>(std::size_t)>& term) {
  std::vector<std::complex<double>> partial(chunk_count(n), {0.0, 0.0});
  parallel_chunks(n, [&](std::size_t c, std::size_t b, std::size_t e) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = b; i < e; ++i) s += term(i);
    partial[c] = s;
  });
  std::complex<double> total{0.0, 0.0};
  for (const auto& p : partial) total += p;
  return total;
}

double deterministic_max(std::size_t n, const std::function<double(std::size_t)>& term) {
  const double floor = -std::numeric_limits<double>::infinity();
  std::vector<double> partial(chunk_count(n), floor);
  parallel_chunks(n, [&](std::size_t c, std::size_t b, std::size_t e) {
    double s = floor;
    for (std::size_t i = b; i < e; ++i) s = std::max(s, term(i));
    partial[c] = s;
  });
  double total = floor;
  for (double p : partial) total = std::max(total, p);
  return total;
}

}  // namespace aus
