#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "apportion/error.hpp"
#include "apportion/instance.hpp"
#include "apportion/outcome.hpp"
#include "apportion/rational.hpp"

namespace apportion {

/// All seat vectors of the stationary divisor method with parameter delta.
/// delta = 0 is Adams, 1/2 Webster, 1 Jefferson.
/// Throws Error(InvalidDelta) outside [0,1] and Error(EmptyOutcome) when
/// delta = 0 and H < n.
Outcome apportion_stationary(const Instance& inst, const Rat& delta);

/// k-th smallest of (t + delta) / p_i over all states and t = 0..H-1.
Rat lambda_level(const Instance& inst, const Rat& delta, std::int64_t k);

/// Closed interval of multipliers that realize the outcome at delta.
std::pair<Rat, Rat> multiplier_interval(const Instance& inst, const Rat& delta);

/// Largest remainders. Ties at the cutoff remainder give a multi-valued result.
Outcome apportion_hamilton(const Instance& inst);

struct AxiomReport {
  bool lower_quota = true;
  bool upper_quota = true;
  std::vector<std::size_t> lower_violations;
  std::vector<std::size_t> upper_violations;

  bool quota_compliant() const { return lower_quota && upper_quota; }
};

/// Quota checks of one seat vector against the instance's quotas.
AxiomReport check_axioms(const Seats& x, const Instance& inst);

/// x at house H and y at house H+1: true when x <= y componentwise.
bool house_monotone(const Seats& x, const Seats& y);

/// x majorizes y: equal sums and every prefix of the decreasingly sorted x is
/// at least the matching prefix of y.
bool majorizes(const Seats& x, const Seats& y);

}  // namespace apportion
