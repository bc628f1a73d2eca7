#include <algorithm>
#include <functional>
#include <numeric>

#include "apportion/core.hpp"

namespace apportion {

AxiomReport check_axioms(const Seats& x, const Instance& inst) {
  if (x.size() != inst.size())
    throw Error(ErrorKind::DimensionMismatch,
                "vector has " + std::to_string(x.size()) + " entries, instance has " + std::to_string(inst.size()));
  const auto q = quotas(inst);
  AxiomReport report;
  for (std::size_t i = 0; i < x.size(); ++i) {
    BigInt xi(static_cast<long>(x[i]));
    if (xi < q[i].floor()) {
      report.lower_quota = false;
      report.lower_violations.push_back(i);
    }
    if (xi > q[i].ceil()) {
      report.upper_quota = false;
      report.upper_violations.push_back(i);
    }
  }
  return report;
}

bool house_monotone(const Seats& x, const Seats& y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::DimensionMismatch, "seat vectors differ in length");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

bool majorizes(const Seats& x, const Seats& y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::DimensionMismatch, "seat vectors differ in length");
  Seats a = x, b = y;
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  std::int64_t sa = 0, sb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (sa < sb) return false;
  }
  return sa == sb;
}

}  // namespace apportion
