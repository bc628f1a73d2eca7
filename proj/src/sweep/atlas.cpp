#include <algorithm>
#include <numeric>

#include "../core/selection.hpp"
#include "apportion/sweep.hpp"

namespace apportion {

namespace {

Rat as_rat(std::int64_t v) { return Rat(static_cast<long>(v)); }

Rat value_at(const Instance& inst, const Line& l, const Rat& delta) {
  return (as_rat(l.offset) + delta) / as_rat(inst.population(l.state));
}

// Lines of one state that can meet lambda_H on [0,1], from the level's range
// [lambda_H(0), lambda_H(1)]; everything below the band stays strictly below.
struct Band {
  std::vector<Line> lines;
  std::int64_t rank = 0;  // position of lambda_H inside the band, 1-based
};

Band candidate_band(const Instance& inst) {
  const Rat lo = lambda_level(inst, Rat(0), inst.house());
  const Rat hi = lambda_level(inst, Rat(1), inst.house());
  Band band;
  std::int64_t below = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Rat p = as_rat(inst.population(i));
    std::int64_t tlo = std::max<std::int64_t>(0, to_int64((lo * p).ceil()) - 1);
    std::int64_t thi = std::min<std::int64_t>(inst.house() - 1, to_int64((hi * p).floor()));
    below += std::min(tlo, inst.house());
    for (std::int64_t t = tlo; t <= thi; ++t) band.lines.push_back({i, t});
  }
  band.rank = inst.house() - below;
  if (band.rank < 1 || band.rank > static_cast<std::int64_t>(band.lines.size()))
    throw Error(ErrorKind::Internal, "level rank outside the candidate band");
  return band;
}

// Orders lines by value at delta and, on ties, by value just to the right.
void sort_at(const Instance& inst, std::vector<Line>& lines, const Rat& delta) {
  detail::StationaryOrder order(inst, delta);
  std::sort(lines.begin(), lines.end(), [&](const Line& a, const Line& b) {
    int c = order.compare(a.state, a.offset, b.state, b.offset);
    if (c != 0) return c < 0;
    auto pa = inst.population(a.state), pb = inst.population(b.state);
    if (pa != pb) return pa > pb;
    return a < b;
  });
}

void collect_touching(const Instance& inst, const std::vector<Line>& sorted, std::size_t level_index,
                      const Rat& delta, std::vector<Line>& active) {
  detail::StationaryOrder order(inst, delta);
  const Line& lv = sorted[level_index];
  for (const auto& l : sorted)
    if (order.compare(l.state, l.offset, lv.state, lv.offset) == 0) active.push_back(l);
}

}  // namespace

LevelSweep sweep_level(const Instance& inst) {
  Band band = candidate_band(inst);
  auto lines = band.lines;
  const auto k = static_cast<std::size_t>(band.rank - 1);
  LevelSweep out;
  Rat cur(0);
  for (;;) {
    sort_at(inst, lines, cur);
    const Line level = lines[k];
    collect_touching(inst, lines, k, cur, out.active);

    const auto pl = inst.population(level.state);
    std::optional<Rat> next;
    for (const auto& l : lines) {
      const auto pj = inst.population(l.state);
      if (pj == pl) continue;
      Rat cross(BigInt(static_cast<long>(level.offset)) * pj - BigInt(static_cast<long>(l.offset)) * pl,
                BigInt(static_cast<long>(pl - pj)));
      if (cross > cur && cross <= Rat(1) && (!next || cross < *next)) next = cross;
    }
    Rat end = next ? *next : Rat(1);
    out.pieces.push_back({cur, end, level});
    if (!next || *next == Rat(1)) {
      sort_at(inst, lines, Rat(1));
      // The level at 1 is the k-th line; ties there also touch the level.
      collect_touching(inst, lines, k, Rat(1), out.active);
      break;
    }
    out.events.push_back(*next);
    cur = *next;
  }
  std::sort(out.active.begin(), out.active.end());
  out.active.erase(std::unique(out.active.begin(), out.active.end()), out.active.end());
  return out;
}

std::vector<Line> active_lines(const Instance& inst) { return sweep_level(inst).active; }

BreakpointAtlas breakpoint_atlas(const Instance& inst) {
  const auto sweep = sweep_level(inst);
  const auto& ev = sweep.events;
  std::vector<Outcome> cells;
  cells.reserve(ev.size() + 1);
  Rat left(0);
  for (std::size_t j = 0; j <= ev.size(); ++j) {
    Rat right = j < ev.size() ? ev[j] : Rat(1);
    cells.push_back(apportion_stationary(inst, (left + right) / Rat(2)));
    left = right;
  }

  BreakpointAtlas atlas;
  Outcome current = cells[0];
  for (std::size_t j = 0; j < ev.size(); ++j) {
    Outcome at = apportion_stationary(inst, ev[j]);
    if (at == current && cells[j + 1] == current) continue;
    atlas.breakpoints.push_back(ev[j]);
    atlas.breakpoint_outcomes.push_back(std::move(at));
    atlas.interval_outcomes.push_back(std::move(current));
    current = cells[j + 1];
  }
  atlas.interval_outcomes.push_back(std::move(current));

  if (inst.house() >= static_cast<std::int64_t>(inst.size())) atlas.at_zero = apportion_stationary(inst, Rat(0));
  atlas.at_one = apportion_stationary(inst, Rat(1));
  return atlas;
}

const Outcome& BreakpointAtlas::outcome_at(const Rat& delta) const {
  if (delta.sign() < 0 || delta > Rat(1))
    throw Error(ErrorKind::InvalidDelta, "delta " + delta.str() + " is outside [0,1]");
  if (delta.sign() == 0) {
    if (!at_zero) throw Error(ErrorKind::EmptyOutcome, "Adams rounding gives every state a seat, but H < n");
    return *at_zero;
  }
  if (delta == Rat(1)) return at_one;
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), delta);
  auto j = static_cast<std::size_t>(it - breakpoints.begin());
  if (it != breakpoints.end() && *it == delta) return breakpoint_outcomes[j];
  return interval_outcomes[j];
}

}  // namespace apportion
