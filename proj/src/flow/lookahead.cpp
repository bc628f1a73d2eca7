#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "apportion/error.hpp"
#include "apportion/flow.hpp"
#include "quota_bounds.hpp"

namespace apportion {

using detail::lower_bound_at;
using detail::upper_bound_at;
using detail::within_bounds;

Seats SeatSequence::prefix(std::size_t n, std::int64_t T) const {
  if (T < 0 || T > horizon()) throw Error(ErrorKind::InvalidArgument, "prefix length outside the sequence");
  Seats a(n, 0);
  for (std::int64_t t = 0; t < T; ++t) {
    if (assign[t] >= n) throw Error(ErrorKind::DimensionMismatch, "seat assigned to an unknown state");
    ++a[assign[t]];
  }
  return a;
}

bool is_quota_sequence(const Instance& inst, const SeatSequence& seq) {
  Seats a(inst.size(), 0);
  for (std::int64_t t = 1; t <= seq.horizon(); ++t) {
    std::size_t s = seq.assign[t - 1];
    if (s >= inst.size()) return false;
    ++a[s];
    if (!within_bounds(inst, a, t)) return false;
  }
  return true;
}

namespace {

void check_vector(const Instance& inst, std::int64_t house, const Seats& y) {
  if (y.size() != inst.size()) throw Error(ErrorKind::DimensionMismatch, "allocation length differs from state count");
  std::int64_t sum = 0;
  for (auto v : y) {
    if (v < 0) throw Error(ErrorKind::InvalidArgument, "negative allocation");
    sum += v;
  }
  if (house < 0 || sum != house) throw Error(ErrorKind::InvalidArgument, "allocation does not sum to the house size");
}

struct KStar {
  std::int64_t k;
  bool all_states;
};

KStar k_star_full(const Instance& inst, std::int64_t house, const Seats& y) {
  check_vector(inst, house, y);
  const std::int64_t P = inst.total();
  // At the next multiple of P every floor is exact, so the inequality holds there.
  const std::int64_t limit = (house / P + 1) * P - house;
  for (std::int64_t k = 1; k <= limit; ++k) {
    std::int64_t demand = 0;
    std::size_t members = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      std::int64_t f = lower_bound_at(inst, i, house + k);
      if (f > y[i]) {
        demand += f - y[i];
        ++members;
      }
    }
    if (demand >= k) return {k, members == y.size()};
  }
  throw Error(ErrorKind::Internal, "no lookahead length satisfies the demand inequality");
}

}  // namespace

std::int64_t k_star(const Instance& inst, std::int64_t house, const Seats& y) {
  return k_star_full(inst, house, y).k;
}

std::int64_t tau(const Instance& inst, std::int64_t house, const Seats& y) {
  KStar r = k_star_full(inst, house, y);
  return r.all_states ? 1 : r.k;
}

std::int64_t phi_upper_bound(const Instance& inst, std::int64_t house) {
  std::int64_t worst = 0;
  for (auto p : inst.populations()) worst = std::max(worst, (inst.total() + p - 1) / p);
  return house + worst;
}

std::vector<std::vector<Seats>> reach_layers(const Instance& inst, std::int64_t horizon, const FlowLimits& limits) {
  if (horizon < 0) throw Error(ErrorKind::InvalidArgument, "negative horizon");
  if (horizon > limits.max_horizon)
    throw Error(ErrorKind::ResourceCap, "horizon " + std::to_string(horizon) + " exceeds max_horizon");
  const std::size_t n = inst.size();
  std::vector<std::set<Seats>> fwd(horizon + 1);
  fwd[0].insert(Seats(n, 0));
  std::size_t nodes = 1;
  for (std::int64_t t = 0; t < horizon; ++t) {
    for (const Seats& y : fwd[t]) {
      for (std::size_t i = 0; i < n; ++i) {
        if (y[i] + 1 > upper_bound_at(inst, i, t + 1)) continue;
        Seats z = y;
        ++z[i];
        if (!within_bounds(inst, z, t + 1)) continue;
        if (fwd[t + 1].insert(std::move(z)).second && ++nodes > limits.max_nodes)
          throw Error(ErrorKind::ResourceCap, "reach layers exceed max_nodes");
      }
    }
  }
  std::vector<std::vector<Seats>> out(horizon + 1);
  out[horizon].assign(fwd[horizon].begin(), fwd[horizon].end());
  for (std::int64_t t = horizon - 1; t >= 0; --t) {
    const auto& next = out[t + 1];
    for (const Seats& y : fwd[t]) {
      for (std::size_t i = 0; i < n; ++i) {
        Seats z = y;
        ++z[i];
        if (std::binary_search(next.begin(), next.end(), z)) {
          out[t].push_back(y);
          break;
        }
      }
    }
  }
  return out;
}

PhiTable phi(const Instance& inst, std::int64_t house, const FlowLimits& limits) {
  if (house < 0) throw Error(ErrorKind::InvalidArgument, "negative house size");
  PhiTable table;
  table.values.push_back(0);
  if (house == 0) return table;

  const std::int64_t P = inst.total();
  std::int64_t first = 1;
  for (;; ++first) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < inst.size(); ++i) sum += lower_bound_at(inst, i, first);
    if (sum >= first || first >= P) break;
  }
  table.values.push_back(first);

  std::int64_t cached_horizon = -1;
  std::vector<std::vector<Seats>> layers;
  for (std::int64_t h = 1; h < house; ++h) {
    std::int64_t horizon = table.values[h];
    if (horizon != cached_horizon) {
      try {
        layers = reach_layers(inst, horizon, limits);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ResourceCap) throw;
        std::ostringstream msg;
        msg << e.what() << "; partial phi:";
        for (auto v : table.values) msg << ' ' << v;
        throw Error(ErrorKind::ResourceCap, msg.str());
      }
      cached_horizon = horizon;
    }
    std::int64_t best = 0;
    for (std::int64_t T = 1; T <= h; ++T)
      for (const Seats& y : layers[T]) best = std::max(best, T + tau(inst, T, y));
    table.values.push_back(best);
  }
  return table;
}

}  // namespace apportion
