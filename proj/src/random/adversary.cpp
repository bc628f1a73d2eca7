#include <algorithm>

#include "apportion/random.hpp"

namespace apportion {

namespace {
constexpr std::int64_t kMaxStates = 1'000'000;
}

Instance adversary_stationary(std::int64_t house, const Rat& delta, const Rat& eps) {
  if (house < 2) throw Error(ErrorKind::InvalidArgument, "house size must be at least 2");
  if (eps.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (delta.sign() < 0 || delta > Rat(1))
    throw Error(ErrorKind::InvalidDelta, "delta " + delta.str() + " is outside [0,1]");
  const Rat H(static_cast<long>(house));

  if (delta.sign() == 0) {
    // One huge state against H-1 unit states; Adams hands every state a seat.
    std::int64_t m = to_int64(((H - Rat(1)) * (H - eps) / eps).ceil());
    std::vector<std::int64_t> pops(static_cast<std::size_t>(house), 1);
    pops[0] = std::max<std::int64_t>(m, 1);
    return Instance(std::move(pops), house);
  }

  // Many states of size M let the first state take the whole house.
  std::int64_t m = std::max<std::int64_t>(1, to_int64((H / eps - Rat(1)).ceil()));
  Rat slack = (H - Rat(1)) * Rat(static_cast<long>(m)) / delta;
  std::int64_t n = m + 2 + to_int64(slack.floor());
  if (n > kMaxStates) throw Error(ErrorKind::ResourceCap, "adversarial instance needs " + std::to_string(n) + " states");
  std::vector<std::int64_t> pops(static_cast<std::size_t>(n), m);
  pops[0] = n - 1;
  return Instance(std::move(pops), house);
}

Instance adversary_fixed_divisor(const std::vector<Rat>& first_signposts, const Rat& eps) {
  const std::size_t n = first_signposts.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "need at least one signpost");
  if (eps.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  Rat sum(0);
  for (const auto& d : first_signposts) {
    if (d.sign() < 0 || d > Rat(1)) throw Error(ErrorKind::InvalidDelta, "signpost " + d.str() + " is outside [0,1]");
    sum += d;
  }
  const bool low = sum <= Rat(static_cast<long>(n)) / Rat(2);
  const Rat step = min(eps, Rat(1, 2)) / Rat(static_cast<long>(2 * std::max<std::size_t>(n - 1, 1)));

  // Quotas just above (or just below) the first signposts of all but the
  // last state, which rounds the house size up to an integer.
  std::vector<Rat> r(n);
  Rat partial(0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Rat& d = first_signposts[i];
    if (low) r[i] = d + step;
    else r[i] = d - step > Rat(0) ? d - step : Rat(1);  // integral quota contributes no deviation
    partial += r[i];
  }
  r[n - 1] = Rat(partial.ceil()) - partial;
  if (r[n - 1].sign() == 0) r[n - 1] = Rat(1);

  BigInt scale(1);
  for (const auto& v : r) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.den().get_mpz_t());
  std::vector<std::int64_t> pops;
  Rat house(0);
  for (const auto& v : r) {
    pops.push_back(to_int64((v * Rat(scale)).num()));
    house += v;
  }
  return Instance(std::move(pops), to_int64(house.num()));
}

FixedPopReport fixed_pop_bound_check(const Instance& inst, const DeltaDistribution& g) {
  if (g.mean() != Rat(1, 2))
    throw Error(ErrorKind::InvalidDistribution, "distribution mean is " + g.mean().str() + ", not 1/2");
  FixedPopReport rep;
  rep.expected = expected_apportionment(inst, g, TieBreak::Uniform);
  rep.quota = quotas(inst);
  const Rat pmin(static_cast<long>(*std::min_element(inst.populations().begin(), inst.populations().end())));
  for (std::size_t i = 0; i < inst.size(); ++i) {
    rep.bound.push_back((Rat(static_cast<long>(inst.population(i))) / pmin + Rat(1)) / Rat(2));
    rep.margin.push_back(rep.bound[i] - abs(rep.expected[i] - rep.quota[i]));
    if (rep.margin[i].sign() < 0) rep.holds = false;
  }
  return rep;
}

}  // namespace apportion
