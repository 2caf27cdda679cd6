#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace delpezzo {

/// Worker count from DELPEZZO_THREADS, else 1.
[[nodiscard]] inline unsigned default_threads() {
  if (const char *env = std::getenv("DELPEZZO_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception &) {
    }
  }
  return 1;
}

/// Runs body(i, tally) for every i in [0, items) on `threads` workers, each
/// with its own tally, then folds the tallies with `combine` in worker order.
/// Work items are claimed dynamically, so the result is schedule-independent
/// only when `combine` is commutative and associative (integer sums are).
template <typename Tally, typename Body, typename Combine>
Tally parallel_reduce(std::size_t items, unsigned threads, Tally init, Body body, Combine combine) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(items, 1))));
  if (threads == 1) {
    Tally t = init;
    for (std::size_t i = 0; i < items; ++i) body(i, t);
    return t;
  }
  std::vector<Tally> tallies(threads, init);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1, std::memory_order_relaxed)) < items;)
            body(i, tallies[w]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(items);
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  Tally out = init;
  for (auto &t : tallies) out = combine(out, t);
  return out;
}

template <typename Body>
long long parallel_count(std::size_t items, unsigned threads, Body body) {
  return parallel_reduce<long long>(
      items, threads, 0LL, [&](std::size_t i, long long &t) { t += body(i); },
      [](long long a, long long b) { return a + b; });
}

} // namespace delpezzo
