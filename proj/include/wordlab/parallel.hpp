#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace wordlab {

inline unsigned default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Runs fn(begin, end) over a static partition of [0, total) into at most
/// `workers` contiguous ranges. The first exception thrown by any range is
/// rethrown after all threads join.
template <typename Fn>
void parallel_for(std::uint64_t total, unsigned workers, Fn&& fn) {
  workers = std::max(1U, workers);
  if (workers == 1 || total < 2) {
    if (total > 0) fn(std::uint64_t{0}, total);
    return;
  }
  const std::uint64_t parts = std::min<std::uint64_t>(workers, total);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(parts);
  for (std::uint64_t p = 0; p < parts; ++p) {
    const std::uint64_t begin = total * p / parts;
    const std::uint64_t end = total * (p + 1) / parts;
    threads.emplace_back([&, p, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[p] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Sum of fn(begin, end) over a partition of [0, total). Integer addition makes
/// the result independent of the worker count.
template <typename Fn>
std::uint64_t parallel_sum(std::uint64_t total, unsigned workers, Fn&& fn) {
  workers = std::max(1U, workers);
  const std::uint64_t parts = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total));
  std::vector<std::uint64_t> partial(parts, 0);
  parallel_for(parts, workers, [&](std::uint64_t pb, std::uint64_t pe) {
    for (std::uint64_t p = pb; p < pe; ++p) partial[p] = fn(total * p / parts, total * (p + 1) / parts);
  });
  std::uint64_t sum = 0;
  for (auto v : partial) sum += v;
  return sum;
}

}  // namespace wordlab
