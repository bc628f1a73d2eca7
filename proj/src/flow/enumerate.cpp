#include <map>
#include <set>
#include <string>

#include "apportion/error.hpp"
#include "apportion/flow.hpp"
#include "quota_bounds.hpp"

namespace apportion {

using detail::lower_bound_at;
using detail::upper_bound_at;
using detail::within_bounds;

namespace {

class CompletionSearch {
 public:
  CompletionSearch(const Instance& inst, std::int64_t house, std::int64_t horizon, const FlowLimits& limits)
      : inst_(inst), house_(house), horizon_(horizon), limits_(limits), memo_(horizon + 1) {}

  std::vector<Seats> run() {
    Seats y(inst_.size(), 0);
    visit(0, y);
    return {found_.begin(), found_.end()};
  }

 private:
  // Whether y at seat count t extends to a full sequence of the horizon.
  bool visit(std::int64_t t, Seats& y) {
    auto& layer = memo_[t];
    if (auto it = layer.find(y); it != layer.end()) return it->second;
    if (++nodes_ > limits_.max_nodes) throw Error(ErrorKind::ResourceCap, "search exceeds max_nodes");
    bool ok = (t == horizon_);
    if (!ok && !demand_feasible(t, y)) {
      layer.emplace(y, false);
      return false;
    }
    for (std::size_t i = 0; i < y.size() && t < horizon_; ++i) {
      if (y[i] + 1 > upper_bound_at(inst_, i, t + 1)) continue;
      ++y[i];
      if (within_bounds(inst_, y, t + 1) && visit(t + 1, y)) ok = true;
      --y[i];
      // Below the target house every successor must be explored; above it one suffices.
      if (ok && t >= house_) break;
    }
    if (ok && t == house_) found_.insert(y);
    layer.emplace(y, ok);
    return ok;
  }

  // Floor demands at every later seat count must fit in the seats left.
  bool demand_feasible(std::int64_t t, const Seats& y) const {
    for (std::int64_t s = t + 1; s <= horizon_; ++s) {
      std::int64_t need = 0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        std::int64_t f = lower_bound_at(inst_, i, s);
        if (f > y[i]) need += f - y[i];
      }
      if (need > s - t) return false;
    }
    return true;
  }

  const Instance& inst_;
  std::int64_t house_;
  std::int64_t horizon_;
  FlowLimits limits_;
  std::vector<std::map<Seats, bool>> memo_;
  std::set<Seats> found_;
  std::size_t nodes_ = 0;
};

}  // namespace

std::vector<Seats> enumerate_hm_quota(const Instance& inst, std::int64_t house, const FlowLimits& limits) {
  if (house < 0) throw Error(ErrorKind::InvalidArgument, "negative house size");
  std::int64_t horizon = phi(inst, house, limits).values.back();
  if (horizon > limits.max_horizon)
    throw Error(ErrorKind::ResourceCap, "horizon " + std::to_string(horizon) + " exceeds max_horizon");
  return CompletionSearch(inst, house, horizon, limits).run();
}

std::vector<Seats> enumerate_hm_quota_by_recursion(const Instance& inst, std::int64_t house,
                                                   const FlowLimits& limits) {
  if (house < 0) throw Error(ErrorKind::InvalidArgument, "negative house size");
  const std::int64_t P = inst.total();
  std::set<Seats> layer{Seats(inst.size(), 0)};
  std::size_t nodes = 1;
  for (std::int64_t h = 0; h < house; ++h) {
    std::set<Seats> next;
    for (const Seats& y : layer) {
      std::int64_t k = k_star(inst, h, y);
      for (std::size_t i = 0; i < y.size(); ++i) {
        bool must = lower_bound_at(inst, i, h + k) > y[i];
        bool may = static_cast<__int128>(inst.population(i)) * (h + 1) > static_cast<__int128>(y[i]) * P;
        if (!must || !may) continue;
        Seats z = y;
        ++z[i];
        if (next.insert(std::move(z)).second && ++nodes > limits.max_nodes)
          throw Error(ErrorKind::ResourceCap, "recursion exceeds max_nodes");
      }
    }
    layer = std::move(next);
  }
  return {layer.begin(), layer.end()};
}

}  // namespace apportion
