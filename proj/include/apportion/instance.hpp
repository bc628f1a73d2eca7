#pragma once

#include <cstdint>
#include <vector>

#include "apportion/rational.hpp"

namespace apportion {

using Seats = std::vector<std::int64_t>;

/// A population vector together with a house size.
class Instance {
 public:
  /// Throws Error(InvalidArgument) unless n >= 1, every p_i >= 1 and H >= 1.
  Instance(std::vector<std::int64_t> populations, std::int64_t house);

  const std::vector<std::int64_t>& populations() const { return populations_; }
  std::int64_t population(std::size_t i) const { return populations_[i]; }
  std::int64_t house() const { return house_; }
  std::int64_t total() const { return total_; }
  std::size_t size() const { return populations_.size(); }

  /// Same populations, different house size.
  Instance with_house(std::int64_t house) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::int64_t> populations_;
  std::int64_t house_;
  std::int64_t total_;
};

/// q_i = p_i * H / P.
std::vector<Rat> quotas(const Instance& inst);

}  // namespace apportion
