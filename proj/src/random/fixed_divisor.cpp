#include <cmath>

#include "apportion/random.hpp"
#include "parallel.hpp"

namespace apportion {

namespace {

// Shifts as numerators over 2^64; the mirrored draw of 0 is 2^64 itself.
using Dyadic = unsigned __int128;
constexpr Dyadic kTwo64 = Dyadic{1} << 64;

void draw_dyadic(std::size_t n, std::uint64_t seed, bool paired, std::vector<Dyadic>& out) {
  std::mt19937_64 rng(seed);
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (paired && i % 2 == 1) out[i] = kTwo64 - out[i - 1];
    else out[i] = rng();
  }
}

Rat dyadic_rat(Dyadic v) {
  BigInt k;
  auto hi = static_cast<std::uint64_t>(v >> 64), lo = static_cast<std::uint64_t>(v);
  k = BigInt(static_cast<unsigned long>(hi));
  k <<= 64;
  k += BigInt(static_cast<unsigned long>(lo));
  return Rat(k, BigInt(1) << 64);
}

ShiftVector to_shifts(const std::vector<Dyadic>& d) {
  ShiftVector s;
  for (auto v : d) s.deltas.push_back(dyadic_rat(v));
  return s;
}

}  // namespace

ShiftVector paired_shifts(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "need at least one shift");
  std::vector<Dyadic> d;
  draw_dyadic(n, seed, true, d);
  return to_shifts(d);
}

ShiftVector iid_shifts(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "need at least one shift");
  std::vector<Dyadic> d;
  draw_dyadic(n, seed, false, d);
  return to_shifts(d);
}

Seats apportion_fixed_divisor(const Instance& inst, const ShiftVector& shifts) {
  if (shifts.deltas.size() != inst.size())
    throw Error(ErrorKind::DimensionMismatch, "shift vector length differs from the number of states");
  const auto q = quotas(inst);
  Seats x(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Rat& d = shifts.deltas[i];
    if (d.sign() < 0 || d > Rat(1)) throw Error(ErrorKind::InvalidDelta, "shift " + d.str() + " is outside [0,1]");
    x[i] = to_int64(q[i].floor()) + (q[i].frac() > d ? 1 : 0);
  }
  return x;
}

std::vector<Seats> sample_fixed_divisor_batch(const Instance& inst, std::uint64_t seed, std::size_t reps, bool paired,
                                              unsigned threads) {
  // frac(q_i) = rem_i / P with P < 2^40, so rem_i * 2^64 and k * P fit in 128 bits.
  const std::size_t n = inst.size();
  const auto P = static_cast<Dyadic>(inst.total());
  std::vector<std::int64_t> floor(n);
  std::vector<Dyadic> rem(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto prod = static_cast<Dyadic>(inst.population(i)) * static_cast<Dyadic>(inst.house());
    floor[i] = static_cast<std::int64_t>(prod / P);
    rem[i] = prod % P;
  }
  std::vector<Seats> out(reps);
  detail::run_parallel(reps, threads, [&](std::size_t r) {
    std::vector<Dyadic> d;
    draw_dyadic(n, derive_seed(seed, r), paired, d);
    Seats x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = floor[i] + ((rem[i] << 64) > d[i] * P ? 1 : 0);
    out[r] = std::move(x);
  });
  return out;
}

double hoeffding_bound(std::int64_t n, double dev) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (!(dev > 0)) throw Error(ErrorKind::InvalidArgument, "deviation must be positive");
  return 2.0 * std::exp(-2.0 * dev * dev / static_cast<double>(n));
}

double hoeffding_bound(std::int64_t n, const Rat& dev) { return hoeffding_bound(n, dev.to_double()); }

}  // namespace apportion
