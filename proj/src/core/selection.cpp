#include "selection.hpp"

#include <algorithm>
#include <numeric>

#include "apportion/error.hpp"

namespace apportion::detail {

Selection select_lines(const Instance& inst, const LineOrder& order, std::int64_t rank, std::int64_t cap,
                       Seats guess) {
  const std::size_t n = inst.size();
  Seats& c = guess;
  for (auto& v : c) v = std::clamp<std::int64_t>(v, 0, cap);
  std::int64_t total = std::accumulate(c.begin(), c.end(), std::int64_t{0});

  auto max_taken = [&](std::size_t& best) {
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] == 0) continue;
      if (!found || order.compare(i, c[i] - 1, best, c[best] - 1) > 0) best = i;
      found = true;
    }
    return found;
  };
  auto min_free = [&](std::size_t& best, std::int64_t limit) {
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] >= limit) continue;
      if (!found || order.compare(i, c[i], best, c[best]) < 0) best = i;
      found = true;
    }
    return found;
  };

  for (;;) {
    if (total > rank) {
      std::size_t i = 0;
      max_taken(i);
      --c[i];
      --total;
    } else if (total < rank) {
      std::size_t i = 0;
      if (!min_free(i, cap)) throw Error(ErrorKind::Internal, "rank exceeds number of lines");
      ++c[i];
      ++total;
    } else {
      std::size_t hi = 0, lo = 0;
      if (!max_taken(hi) || !min_free(lo, cap)) break;
      if (order.compare(hi, c[hi] - 1, lo, c[lo]) <= 0) break;
      --c[hi];
      ++c[lo];
    }
  }

  Selection sel;
  sel.counts = c;
  std::size_t hi = 0;
  if (max_taken(hi)) sel.kth = {hi, c[hi] - 1};
  std::size_t lo = 0;
  sel.has_next = min_free(lo, cap + 1);
  if (sel.has_next) sel.next = {lo, c[lo]};
  return sel;
}

Outcome outcome_from_selection(const Instance& inst, const LineOrder& order, const Selection& sel) {
  const std::size_t n = inst.size();
  Seats base = sel.counts;
  std::vector<std::size_t> tied;
  const auto& [ks, kt] = sel.kth;
  for (std::size_t i = 0; i < n; ++i) {
    if (base[i] > 0 && order.compare(i, base[i] - 1, ks, kt) == 0) --base[i];
    if (order.compare(i, base[i], ks, kt) == 0) tied.push_back(i);
  }
  std::int64_t extra = inst.house() - std::accumulate(base.begin(), base.end(), std::int64_t{0});
  return Outcome(std::move(base), std::move(tied), extra);
}

}  // namespace apportion::detail
