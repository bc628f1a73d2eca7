#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "apportion/sweep.hpp"

namespace apportion {

struct Atom {
  Rat at;
  Rat mass;
};

struct UniformPiece {
  Rat lo;
  Rat hi;
  Rat mass;
};

/// Mixture of point masses and uniform pieces on [0,1] with total mass 1.
class DeltaDistribution {
 public:
  /// Throws Error(InvalidDistribution) on negative masses, pieces outside
  /// [0,1] or with lo >= hi, or total mass other than 1.
  DeltaDistribution(std::vector<Atom> atoms, std::vector<UniformPiece> pieces);

  static DeltaDistribution point(const Rat& at);
  static DeltaDistribution uniform();
  /// Mass 1/2 at 0 and at 1.
  static DeltaDistribution adams_jefferson();

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<UniformPiece>& pieces() const { return pieces_; }
  Rat mean() const;

  /// Inverse CDF at u in [0,1): atoms first, then pieces, in stored order.
  Rat quantile(const Rat& u) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<UniformPiece> pieces_;
};

enum class TieBreak { Uniform, LexMax, LexMin, SeededRandom };

/// Exact E[F_i] under delta ~ G. Ties are averaged uniformly for Uniform and
/// resolved to the lexicographic extreme for LexMax and LexMin.
std::vector<Rat> expected_apportionment(const Instance& inst, const DeltaDistribution& g, TieBreak b);
std::vector<Rat> expected_apportionment(const BreakpointAtlas& atlas, const DeltaDistribution& g, TieBreak b);

/// Independent stream for task `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// k / 2^64 for a fresh 64-bit draw k.
Rat dyadic_uniform(std::mt19937_64& rng);

/// Resolves a tie set into one vector.
Seats resolve_ties(const Outcome& outcome, TieBreak b, std::mt19937_64& rng);

Seats sample_randomized_divisor(const Instance& inst, const DeltaDistribution& g, TieBreak b, std::uint64_t seed);

/// reps draws; draw r uses derive_seed(seed, r) so results do not depend on
/// the thread count.
std::vector<Seats> sample_randomized_divisor_batch(const Instance& inst, const DeltaDistribution& g, TieBreak b,
                                                   std::uint64_t seed, std::size_t reps, unsigned threads = 0);

struct ShiftVector {
  std::vector<Rat> deltas;
};

/// Odd positions (1-based) draw a dyadic uniform, even ones mirror the
/// previous draw, so every pair sums to 1.
ShiftVector paired_shifts(std::size_t n, std::uint64_t seed);
/// Independent dyadic uniforms.
ShiftVector iid_shifts(std::size_t n, std::uint64_t seed);

/// x_i = floor(q_i) + [frac(q_i) > delta_i]; integral quotas are kept as is.
Seats apportion_fixed_divisor(const Instance& inst, const ShiftVector& shifts);

/// reps draws of the fixed-divisor method; draw r uses the shifts of
/// paired_shifts(n, derive_seed(seed, r)) (or iid_shifts when paired is false).
std::vector<Seats> sample_fixed_divisor_batch(const Instance& inst, std::uint64_t seed, std::size_t reps,
                                              bool paired = true, unsigned threads = 0);

/// 2 exp(-2 dev^2 / n).
double hoeffding_bound(std::int64_t n, double dev);
double hoeffding_bound(std::int64_t n, const Rat& dev);

/// Instance on which every stationary outcome at delta puts state 0 at least
/// H-1-eps (delta = 0) or H-eps (delta > 0) seats away from its quota.
Instance adversary_stationary(std::int64_t house, const Rat& delta, const Rat& eps);

/// Instance on which the fixed-divisor method with first signposts delta_i
/// misses the house size by at least n/2 - 1 - eps.
Instance adversary_fixed_divisor(const std::vector<Rat>& first_signposts, const Rat& eps);

struct FixedPopReport {
  std::vector<Rat> expected;
  std::vector<Rat> quota;
  std::vector<Rat> bound;   // (p_i / min p + 1) / 2
  std::vector<Rat> margin;  // bound - |expected - quota|
  bool holds = true;
};

/// Requires mean(G) = 1/2 exactly, else Error(InvalidDistribution).
FixedPopReport fixed_pop_bound_check(const Instance& inst, const DeltaDistribution& g);

}  // namespace apportion
