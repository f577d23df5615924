#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <utility>
#include <vector>

namespace viforge {

// Worker budget for guess loops; 1 means sequential. Results never depend on it.
void set_thread_count(int threads);
int thread_count();

// Best result over independent guesses 0..count-1. eval(i, cutoff) returns
// nullopt or a result whose score is at least as good as `cutoff` (when
// given). Guesses run in batches of thread_count(); each batch sees the best
// score of the batches before it. Ties go to the smallest index, so the
// outcome is the same for every thread count.
template <class Result, class Eval, class Score>
std::optional<std::pair<std::size_t, Result>> best_over_guesses(std::size_t count, Eval eval,
                                                                Score score, bool maximize) {
  std::optional<std::pair<std::size_t, Result>> best;
  std::optional<std::int64_t> cutoff;
  const std::size_t batch = static_cast<std::size_t>(std::max(1, thread_count()));
  for (std::size_t start = 0; start < count; start += batch) {
    const std::size_t end = std::min(count, start + batch);
    std::vector<std::optional<Result>> results(end - start);
    if (end - start == 1) {
      results[0] = eval(start, cutoff);
    } else {
      std::vector<std::future<std::optional<Result>>> futures;
      for (std::size_t i = start; i < end; ++i) {
        futures.push_back(std::async(std::launch::async, [&eval, i, cutoff] { return eval(i, cutoff); }));
      }
      for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i]) continue;
      const std::int64_t s = score(*results[i]);
      if (!best || (maximize ? s > score(best->second) : s < score(best->second))) {
        best.emplace(start + i, std::move(*results[i]));
        cutoff = s;
      }
    }
  }
  return best;
}

}  // namespace viforge
