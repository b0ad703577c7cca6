#ifndef ANISOSPEC_PARALLEL_HPP
#define ANISOSPEC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace anisospec {

/// Runs body(i) for i in [0, n) on `workers` threads with a static contiguous partition.
/// Results must be written to per-index slots; the first exception thrown is rethrown.
template <typename Body>
void parallel_for(std::size_t n, int workers, Body&& body) {
  const std::size_t w = std::clamp<std::size_t>(workers < 1 ? 1 : static_cast<std::size_t>(workers), 1,
                                                 std::max<std::size_t>(n, 1));
  if (w == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t k = 0; k < w; ++k) {
    const std::size_t begin = n * k / w;
    const std::size_t end = n * (k + 1) / w;
    threads.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

/// Pairwise sum with a fixed recursion shape; the result depends only on the input order.
template <typename Get>
double pairwise_sum(std::size_t begin, std::size_t end, Get&& get) {
  const std::size_t n = end - begin;
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += get(i);
    return s;
  }
  const std::size_t mid = begin + n / 2;
  return pairwise_sum(begin, mid, get) + pairwise_sum(mid, end, get);
}

}  // namespace anisospec

#endif  // ANISOSPEC_PARALLEL_HPP
