#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace idp {

/// Worker count from IDP_NUM_THREADS, else the hardware concurrency.
int thread_count();

/// Calls body(begin, end) over a fixed partition of [0, n). The partition
/// depends only on n and thread_count(), so per-chunk reductions combined in
/// chunk order are reproducible. If several chunks throw, the exception of
/// the lowest chunk is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_chunk = 4096) {
  const auto workers = static_cast<std::size_t>(std::max(1, thread_count()));
  const std::size_t chunks = std::min(workers, std::max<std::size_t>(1, n / min_chunk));
  if (chunks <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks - 1);
  const auto run = [&](std::size_t c) {
    try {
      body(n * c / chunks, n * (c + 1) / chunks);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  for (std::size_t c = 1; c < chunks; ++c) pool.emplace_back(run, c);
  run(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace idp
