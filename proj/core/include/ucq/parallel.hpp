#pragma once

#include <exception>
#include <thread>
#include <vector>

namespace ucq {

/// Runs fn(trial) for trial in [0, trials) on up to `threads` workers with a
/// static block partition. Callers store per-trial results by index and
/// reduce in index order, which keeps aggregates schedule-independent.
template <class F>
void parallel_trials(long long trials, int threads, F&& fn) {
  if (threads <= 1 || trials <= 1) {
    for (long long i = 0; i < trials; ++i) fn(i);
    return;
  }
  const int nw = static_cast<int>(std::min<long long>(threads, trials));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(nw);
  for (int w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (long long i = w; i < trials; i += nw) fn(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace ucq
