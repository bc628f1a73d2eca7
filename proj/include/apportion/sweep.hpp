#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apportion/core.hpp"

namespace apportion {

/// The line (t + delta) / p_i of state i with offset t.
struct Line {
  std::size_t state = 0;
  std::int64_t offset = 0;

  friend auto operator<=>(const Line&, const Line&) = default;
};

/// lambda_H(delta) = (line.offset + delta) / p_{line.state} for delta in [lo, hi].
struct LevelPiece {
  Rat lo;
  Rat hi;
  Line line;
};

struct LevelSweep {
  std::vector<Line> active;        // every line touching lambda_H on [0,1], sorted
  std::vector<LevelPiece> pieces;  // lambda_H on [0,1], left to right
  std::vector<Rat> events;         // crossings with the level inside (0,1)
};

/// Walks lambda_H across [0,1] over a candidate band of lines.
LevelSweep sweep_level(const Instance& inst);

/// Lines of the family that touch lambda_H somewhere on [0,1].
std::vector<Line> active_lines(const Instance& inst);

struct BreakpointAtlas {
  std::vector<Rat> breakpoints;             // strictly increasing, inside (0,1)
  std::vector<Outcome> interval_outcomes;   // one more than breakpoints
  std::vector<Outcome> breakpoint_outcomes; // one per breakpoint
  std::optional<Outcome> at_zero;           // empty when H < n
  Outcome at_one;

  /// Outcome at any delta in [0,1]. Throws Error(EmptyOutcome) at 0 when H < n.
  const Outcome& outcome_at(const Rat& delta) const;
};

BreakpointAtlas breakpoint_atlas(const Instance& inst);

struct QuotaPartition {
  Rat tau_low;   // lower quota holds for delta >= tau_low
  Rat tau_high;  // upper quota holds for delta <= tau_high
};

QuotaPartition quota_partition(const Instance& inst);

/// Exponent of a power mean, possibly infinite.
class PowerMeanParam {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  PowerMeanParam() = default;
  PowerMeanParam(const Rat& q) : kind_(Kind::Finite), value_(q) {}
  static PowerMeanParam neg_inf() { return PowerMeanParam(Kind::NegInf); }
  static PowerMeanParam pos_inf() { return PowerMeanParam(Kind::PosInf); }
  /// Accepts a rational, "-inf", "+inf" or "inf".
  static PowerMeanParam parse(const std::string& text);

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  const Rat& value() const { return value_; }
  std::string str() const;

  friend bool operator==(const PowerMeanParam&, const PowerMeanParam&) = default;
  friend std::strong_ordering operator<=>(const PowerMeanParam& a, const PowerMeanParam& b);

 private:
  explicit PowerMeanParam(Kind kind) : kind_(kind) {}
  Kind kind_ = Kind::Finite;
  Rat value_;
};

/// Divisor method whose signposts are power means of t and t+1.
/// q = -inf is Adams, -1 Dean, 0 Hill, 1 Webster, +inf Jefferson.
Outcome apportion_power_mean(const Instance& inst, const PowerMeanParam& q);

struct PowerMeanSegment {
  PowerMeanParam lo;
  PowerMeanParam hi;
  Outcome outcome;
  bool widened = false;  // the bracket to the next segment is wider than tol
};

/// Splits [q_lo, q_hi] into runs of constant outcome. Consecutive segments
/// leave an unresolved bracket of width at most tol between them.
std::vector<PowerMeanSegment> power_mean_breakpoints(const Instance& inst, const PowerMeanParam& q_lo,
                                                     const PowerMeanParam& q_hi, const Rat& tol);

struct ArrangementLine {
  Rat m;
  Rat c;
};

using ArrangementSpec = std::vector<ArrangementLine>;

/// Affine maps of the plane that put slopes into (1,2) and make every c_i/m_i
/// a positive integer without changing which lines lie below which vertex.
ArrangementSpec normalize_arrangement(const ArrangementSpec& spec);

/// True when every slope lies in (1,2) and every c_i/m_i is a positive integer.
bool is_normalized(const ArrangementSpec& spec);

struct ArrangementInstance {
  ArrangementSpec normalized;              // arrangement actually encoded
  std::int64_t level = 0;                  // k after dropping lines off the level
  std::vector<Rat> rational_populations;   // p_i = 1/m_i
  BigInt scale;                            // common denominator of the p_i
  Instance instance;                       // populations scaled by `scale`
};

/// Instance whose (H-1)-level on [0,1] traces the k-level of the arrangement.
/// Inputs with positive slopes and every c_i/m_i a non-negative integer are
/// used as given; others are normalized first. Lines that never meet the
/// k-level on [0,1] are dropped and k is lowered for those below it.
ArrangementInstance instance_from_arrangement(const ArrangementSpec& spec, std::int64_t k);

}  // namespace apportion
