#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "apportion/instance.hpp"
#include "apportion/rational.hpp"

namespace apportion {

/// Guards for the exhaustive searches below; exceeding them throws
/// Error(ResourceCap).
struct FlowLimits {
  std::size_t max_nodes = 2'000'000;
  std::int64_t max_horizon = 4'096;
};

/// Seat t+1 goes to state assign[t].
struct SeatSequence {
  std::vector<std::size_t> assign;

  std::int64_t horizon() const { return static_cast<std::int64_t>(assign.size()); }
  /// Seats per state after the first T seats.
  Seats prefix(std::size_t n, std::int64_t T) const;

  friend bool operator==(const SeatSequence&, const SeatSequence&) = default;
  friend auto operator<=>(const SeatSequence&, const SeatSequence&) = default;
};

/// Every prefix stays within floor(t p_i / P) .. ceil(t p_i / P).
bool is_quota_sequence(const Instance& inst, const SeatSequence& seq);

/// Only the populations of `inst` are used; the house size is passed explicitly.
std::int64_t k_star(const Instance& inst, std::int64_t house, const Seats& y);
std::int64_t tau(const Instance& inst, std::int64_t house, const Seats& y);

struct PhiTable {
  std::vector<std::int64_t> values;  // Phi(p, 0..H)
};

PhiTable phi(const Instance& inst, std::int64_t house, const FlowLimits& limits = {});

/// H + max_i ceil(P / p_i).
std::int64_t phi_upper_bound(const Instance& inst, std::int64_t house);

/// Distinct prefix vectors A(x, t), t = 0..horizon, over all quota sequences
/// of the given horizon.
std::vector<std::vector<Seats>> reach_layers(const Instance& inst, std::int64_t horizon,
                                             const FlowLimits& limits = {});

/// Apportionments at `house` of house-monotone quota-compliant methods, by
/// depth-first search over sequences of horizon Phi(p, house). Sorted.
std::vector<Seats> enumerate_hm_quota(const Instance& inst, std::int64_t house, const FlowLimits& limits = {});

/// Same set built seat by seat from the lower/upper admissible state sets.
std::vector<Seats> enumerate_hm_quota_by_recursion(const Instance& inst, std::int64_t house,
                                                   const FlowLimits& limits = {});

/// Convex combination of quota sequences of horizon P equal to p_i / P at
/// every seat.
struct Decomposition {
  std::vector<SeatSequence> points;
  std::vector<Rat> weights;
};

Decomposition decompose_quota(const Instance& inst, const FlowLimits& limits = {});

/// Draws a sequence with probability equal to its weight and returns its
/// prefix at `house` (house <= P).
Seats sample_hm_method(const Instance& inst, const Decomposition& dec, std::int64_t house, std::uint64_t seed);
Seats sample_hm_method(const Instance& inst, std::int64_t house, std::uint64_t seed);

}  // namespace apportion
