#include <algorithm>

#include "apportion/random.hpp"
#include "parallel.hpp"

namespace apportion {

DeltaDistribution::DeltaDistribution(std::vector<Atom> atoms, std::vector<UniformPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  Rat total(0);
  for (const auto& a : atoms_) {
    if (a.mass.sign() < 0) throw Error(ErrorKind::InvalidDistribution, "negative atom mass");
    if (a.at.sign() < 0 || a.at > Rat(1)) throw Error(ErrorKind::InvalidDistribution, "atom outside [0,1]");
    total += a.mass;
  }
  for (const auto& p : pieces_) {
    if (p.mass.sign() < 0) throw Error(ErrorKind::InvalidDistribution, "negative piece mass");
    if (!(p.lo < p.hi)) throw Error(ErrorKind::InvalidDistribution, "uniform piece needs lo < hi");
    if (p.lo.sign() < 0 || p.hi > Rat(1)) throw Error(ErrorKind::InvalidDistribution, "uniform piece outside [0,1]");
    total += p.mass;
  }
  if (total != Rat(1)) throw Error(ErrorKind::InvalidDistribution, "total mass is " + total.str() + ", not 1");
}

DeltaDistribution DeltaDistribution::point(const Rat& at) { return DeltaDistribution({{at, Rat(1)}}, {}); }

DeltaDistribution DeltaDistribution::uniform() { return DeltaDistribution({}, {{Rat(0), Rat(1), Rat(1)}}); }

DeltaDistribution DeltaDistribution::adams_jefferson() {
  return DeltaDistribution({{Rat(0), Rat(1, 2)}, {Rat(1), Rat(1, 2)}}, {});
}

Rat DeltaDistribution::mean() const {
  Rat m(0);
  for (const auto& a : atoms_) m += a.at * a.mass;
  for (const auto& p : pieces_) m += p.mass * (p.lo + p.hi) / Rat(2);
  return m;
}

Rat DeltaDistribution::quantile(const Rat& u) const {
  Rat cum(0);
  const Rat* last = nullptr;
  for (const auto& a : atoms_) {
    if (a.mass.sign() == 0) continue;
    cum += a.mass;
    last = &a.at;
    if (u < cum) return a.at;
  }
  for (const auto& p : pieces_) {
    if (p.mass.sign() == 0) continue;
    if (u < cum + p.mass) return p.lo + (u - cum) / p.mass * (p.hi - p.lo);
    cum += p.mass;
    last = &p.hi;
  }
  return *last;
}

namespace {

std::vector<Rat> representative(const Outcome& o, TieBreak b) {
  switch (b) {
    case TieBreak::LexMax: {
      auto x = o.lex_max();
      return {x.begin(), x.end()};
    }
    case TieBreak::LexMin: {
      auto x = o.lex_min();
      return {x.begin(), x.end()};
    }
    case TieBreak::Uniform:
    case TieBreak::SeededRandom: break;
  }
  return o.mean();
}

void add_scaled(std::vector<Rat>& acc, const std::vector<Rat>& v, const Rat& w) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * v[i];
}

}  // namespace

std::vector<Rat> expected_apportionment(const BreakpointAtlas& atlas, const DeltaDistribution& g, TieBreak b) {
  const std::size_t n = atlas.at_one.size();
  std::vector<Rat> e(n, Rat(0));
  for (const auto& a : g.atoms()) {
    if (a.mass.sign() == 0) continue;
    const Outcome& o = atlas.outcome_at(a.at);
    if (!o.single_valued() && b == TieBreak::SeededRandom)
      throw Error(ErrorKind::UnsupportedTieBreak,
                  "atom at " + a.at.str() + " lands on a tie; seeded-random has no exact expectation there");
    add_scaled(e, representative(o, b), a.mass);
  }
  for (const auto& p : g.pieces()) {
    if (p.mass.sign() == 0) continue;
    const Rat density = p.mass / (p.hi - p.lo);
    Rat left(0);
    for (std::size_t j = 0; j < atlas.interval_outcomes.size(); ++j) {
      Rat right = j < atlas.breakpoints.size() ? atlas.breakpoints[j] : Rat(1);
      Rat lo = max(left, p.lo), hi = min(right, p.hi);
      if (lo < hi) add_scaled(e, representative(atlas.interval_outcomes[j], b), density * (hi - lo));
      left = right;
    }
  }
  return e;
}

std::vector<Rat> expected_apportionment(const Instance& inst, const DeltaDistribution& g, TieBreak b) {
  return expected_apportionment(breakpoint_atlas(inst), g, b);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rat dyadic_uniform(std::mt19937_64& rng) {
  static const BigInt two64 = BigInt(1) << 64;
  BigInt k;
  std::uint64_t v = rng();
  mpz_import(k.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return Rat(k, two64);
}

namespace {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

}  // namespace

Seats resolve_ties(const Outcome& outcome, TieBreak b, std::mt19937_64& rng) {
  switch (b) {
    case TieBreak::LexMax: return outcome.lex_max();
    case TieBreak::LexMin: return outcome.lex_min();
    case TieBreak::Uniform:
    case TieBreak::SeededRandom: break;
  }
  Seats x = outcome.base();
  auto pool = outcome.tied();
  for (std::int64_t k = 0; k < outcome.extra(); ++k) {
    auto j = static_cast<std::size_t>(k) + uniform_below(rng, pool.size() - static_cast<std::size_t>(k));
    std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
    x[pool[static_cast<std::size_t>(k)]] += 1;
  }
  return x;
}

namespace {

Seats draw_one(const BreakpointAtlas& atlas, const DeltaDistribution& g, TieBreak b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Rat delta = g.quantile(dyadic_uniform(rng));
  return resolve_ties(atlas.outcome_at(delta), b, rng);
}

}  // namespace

Seats sample_randomized_divisor(const Instance& inst, const DeltaDistribution& g, TieBreak b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Rat delta = g.quantile(dyadic_uniform(rng));
  return resolve_ties(apportion_stationary(inst, delta), b, rng);
}

std::vector<Seats> sample_randomized_divisor_batch(const Instance& inst, const DeltaDistribution& g, TieBreak b,
                                                   std::uint64_t seed, std::size_t reps, unsigned threads) {
  const auto atlas = breakpoint_atlas(inst);
  std::vector<Seats> out(reps);
  detail::run_parallel(reps, threads, [&](std::size_t r) { out[r] = draw_one(atlas, g, b, derive_seed(seed, r)); });
  return out;
}

}  // namespace apportion
