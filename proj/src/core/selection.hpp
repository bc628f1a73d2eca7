#pragma once

// Highest-averages selection shared by the stationary and power-mean methods.
// Line (i, t) has value s(t) / p_i for an increasing signpost sequence s.

#include <cstddef>
#include <cstdint>

#include "apportion/instance.hpp"
#include "apportion/outcome.hpp"

namespace apportion::detail {

class LineOrder {
 public:
  virtual ~LineOrder() = default;
  /// Sign of value(i, t) - value(j, u).
  virtual int compare(std::size_t i, std::int64_t t, std::size_t j, std::int64_t u) const = 0;
  /// True when s(0) = 0, which forces every state to at least one seat.
  virtual bool zero_at_origin() const = 0;
};

struct LineId {
  std::size_t state = 0;
  std::int64_t offset = 0;
};

struct Selection {
  Seats counts;      // lines taken per state, summing to the target rank
  LineId kth;        // largest taken line
  LineId next;       // smallest line not taken (offsets may reach `cap`)
  bool has_next = false;
};

/// Chooses the `rank` smallest lines with at most `cap` lines per state,
/// starting from `guess`. Lines with offset `cap` are only used for `next`.
Selection select_lines(const Instance& inst, const LineOrder& order, std::int64_t rank, std::int64_t cap,
                       Seats guess);

/// Outcome of the H-th smallest line level (strictly lower lines are mandatory
/// seats, lines at the level are ties).
Outcome outcome_from_selection(const Instance& inst, const LineOrder& order, const Selection& sel);

}  // namespace apportion::detail

#include "apportion/rational.hpp"

namespace apportion::detail {

/// Lines (t + delta) / p_i of the stationary method, compared exactly.
class StationaryOrder final : public LineOrder {
 public:
  StationaryOrder(const Instance& inst, const Rat& delta);
  int compare(std::size_t i, std::int64_t t, std::size_t j, std::int64_t u) const override;
  bool zero_at_origin() const override { return zero_; }

 private:
  const Instance* inst_;
  BigInt a_, b_;
  __int128 a128_ = 0, b128_ = 1;
  bool fast_ = false;
  bool zero_ = false;
};

/// Initial per-state line counts near the H-th level.
Seats stationary_guess(const Instance& inst, const Rat& delta, std::int64_t rank);

}  // namespace apportion::detail
