#pragma once

#include <cstdint>

#include "apportion/instance.hpp"

namespace apportion::detail {

// floor(t * p_i / P) and ceil(t * p_i / P).
inline std::int64_t lower_bound_at(const Instance& inst, std::size_t i, std::int64_t t) {
  __int128 num = static_cast<__int128>(t) * inst.population(i);
  return static_cast<std::int64_t>(num / inst.total());
}

inline std::int64_t upper_bound_at(const Instance& inst, std::size_t i, std::int64_t t) {
  __int128 num = static_cast<__int128>(t) * inst.population(i);
  return static_cast<std::int64_t>((num + inst.total() - 1) / inst.total());
}

inline bool within_bounds(const Instance& inst, const Seats& y, std::int64_t t) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] < lower_bound_at(inst, i, t) || y[i] > upper_bound_at(inst, i, t)) return false;
  return true;
}

}  // namespace apportion::detail
