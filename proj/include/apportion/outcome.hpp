#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "apportion/instance.hpp"

namespace apportion {

/// Set of seat vectors x with x_i = base_i + [i in S] for every S subset of
/// `tied` of size `extra`. Degenerate ties (extra 0 or |tied|) are folded into
/// base so that equal sets compare equal.
class Outcome {
 public:
  Outcome() = default;
  Outcome(Seats base, std::vector<std::size_t> tied, std::int64_t extra);

  const Seats& base() const { return base_; }
  const std::vector<std::size_t>& tied() const { return tied_; }
  std::int64_t extra() const { return extra_; }
  std::size_t size() const { return base_.size(); }
  std::int64_t house() const;

  bool single_valued() const { return tied_.empty(); }
  bool is_tied(std::size_t i) const;

  /// Number of vectors in the expansion, C(|tied|, extra).
  BigInt expansion_size() const;

  /// Smallest and largest seat count of state i over the expansion.
  std::int64_t min_seats(std::size_t i) const { return base_[i]; }
  std::int64_t max_seats(std::size_t i) const { return base_[i] + (is_tied(i) ? 1 : 0); }

  bool contains(const Seats& x) const;

  /// Lexicographically largest and smallest member of the expansion.
  Seats lex_max() const;
  Seats lex_min() const;

  /// Expectation of each component when the subset is uniform over the expansion.
  std::vector<Rat> mean() const;

  friend bool operator==(const Outcome&, const Outcome&) = default;

 private:
  Seats base_;
  std::vector<std::size_t> tied_;
  std::int64_t extra_ = 0;
};

/// Lazy enumeration of an Outcome's expansion in lexicographically decreasing
/// order of the chosen subset positions.
class ExpansionIterator {
 public:
  explicit ExpansionIterator(const Outcome& outcome);

  /// Writes the next vector into `out`; returns false once exhausted.
  bool next(Seats& out);

 private:
  const Outcome* outcome_;
  std::vector<std::size_t> choice_;
  bool started_ = false;
  bool done_ = false;
};

/// Materializes the expansion; throws Error(ResourceCap) above `cap` vectors.
std::vector<Seats> expand(const Outcome& outcome, std::size_t cap = 1u << 20);

}  // namespace apportion
