#include <algorithm>
#include <numeric>

#include "apportion/core.hpp"

namespace apportion {

Outcome apportion_hamilton(const Instance& inst) {
  const auto q = quotas(inst);
  const std::size_t n = inst.size();
  Seats base(n);
  std::vector<Rat> rem(n);
  for (std::size_t i = 0; i < n; ++i) {
    base[i] = to_int64(q[i].floor());
    rem[i] = q[i].frac();
  }
  const std::int64_t left = inst.house() - std::accumulate(base.begin(), base.end(), std::int64_t{0});
  if (left == 0) return Outcome(base, {}, 0);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rem[a] > rem[b]; });
  const Rat cutoff = rem[order[static_cast<std::size_t>(left - 1)]];

  std::vector<std::size_t> tied;
  std::int64_t extra = left;
  for (std::size_t i = 0; i < n; ++i) {
    if (rem[i] > cutoff) {
      base[i] += 1;
      --extra;
    } else if (rem[i] == cutoff) {
      tied.push_back(i);
    }
  }
  return Outcome(std::move(base), std::move(tied), extra);
}

}  // namespace apportion
