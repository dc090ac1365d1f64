#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace msr {

/// Evaluates fn(i) for i in [0, count) on a small thread pool and returns the
/// smallest i for which fn produced a value, together with that value.
///
/// Indices are claimed in increasing order and work stops above the best
/// hit, so the answer is the same as a sequential scan.
template <typename Result, typename Fn>
std::optional<std::pair<std::size_t, Result>> parallel_find_first(std::size_t count, Fn&& fn,
                                                                   unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::mutex guard;
  std::optional<std::pair<std::size_t, Result>> found;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || i > best.load()) return;
      std::optional<Result> r = fn(i);
      if (!r) continue;
      std::lock_guard lock(guard);
      if (!found || i < found->first) {
        found.emplace(i, std::move(*r));
        best.store(i);
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return found;
}

}  // namespace msr
