#include <doctest.h>

#include <cmath>
#include <random>

#include "apportion/error.hpp"
#include "apportion/random.hpp"
#include "../oracles.hpp"

using namespace apportion;

namespace {

Rat r(const char* s) { return Rat::parse(s); }
Rat ri(std::int64_t v) { return Rat(static_cast<long long>(v)); }

std::vector<Rat> average(const std::set<Seats>& xs) {
  std::vector<Rat> m(xs.begin()->size());
  for (auto& x : xs)
    for (std::size_t i = 0; i < x.size(); ++i) m[i] += ri(x[i]);
  for (auto& v : m) v /= ri(static_cast<std::int64_t>(xs.size()));
  return m;
}

std::vector<Rat> pick(const std::set<Seats>& xs, TieBreak b) {
  if (b == TieBreak::Uniform) return average(xs);
  const Seats& x = b == TieBreak::LexMax ? *xs.rbegin() : *xs.begin();
  std::vector<Rat> out;
  for (auto v : x) out.push_back(ri(v));
  return out;
}

// Exact expectation from brute-force outcomes: the outcome is constant
// between consecutive pairwise line crossings.
std::vector<Rat> brute_expected(const Instance& inst, const DeltaDistribution& g, TieBreak b) {
  std::set<Rat> cuts{Rat(0), Rat(1)};
  for (std::size_t i = 0; i < inst.size(); ++i)
    for (std::size_t j = i + 1; j < inst.size(); ++j)
      for (std::int64_t t = 0; t < inst.house(); ++t)
        for (std::int64_t u = 0; u < inst.house(); ++u) {
          Rat pi = ri(inst.population(i)), pj = ri(inst.population(j));
          if (pi == pj) continue;
          Rat d = (ri(u) * pi - ri(t) * pj) / (pj - pi);
          if (d.sign() > 0 && d < Rat(1)) cuts.insert(d);
        }
  std::vector<Rat> e(inst.size());
  auto add = [&](const std::vector<Rat>& v, const Rat& w) {
    for (std::size_t i = 0; i < v.size(); ++i) e[i] += w * v[i];
  };
  for (auto& a : g.atoms())
    if (a.mass.sign() > 0) add(pick(oracle::brute_stationary(inst, a.at), b), a.mass);
  std::vector<Rat> cs(cuts.begin(), cuts.end());
  for (auto& piece : g.pieces())
    for (std::size_t k = 0; k + 1 < cs.size(); ++k) {
      Rat lo = max(cs[k], piece.lo), hi = min(cs[k + 1], piece.hi);
      if (!(lo < hi)) continue;
      Rat w = piece.mass * (hi - lo) / (piece.hi - piece.lo);
      add(pick(oracle::brute_stationary(inst, (lo + hi) / Rat(2)), b), w);
    }
  return e;
}

Rat sum(const std::vector<Rat>& v) {
  Rat s;
  for (auto& x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("delta distributions") {
  CHECK_THROWS_AS(DeltaDistribution({{r("1/2"), r("1/2")}}, {}), Error);
  CHECK_THROWS_AS(DeltaDistribution({{r("3/2"), Rat(1)}}, {}), Error);
  CHECK_THROWS_AS(DeltaDistribution({}, {{r("1/2"), r("1/2"), Rat(1)}}), Error);
  CHECK_THROWS_AS(DeltaDistribution({{Rat(0), r("-1/2")}, {Rat(1), r("3/2")}}, {}), Error);
  auto aj = DeltaDistribution::adams_jefferson();
  CHECK(aj.mean() == r("1/2"));
  CHECK(aj.quantile(r("1/4")) == Rat(0));
  CHECK(aj.quantile(r("3/4")) == Rat(1));
  auto u = DeltaDistribution::uniform();
  CHECK(u.mean() == r("1/2"));
  CHECK(u.quantile(r("3/8")) == r("3/8"));
  DeltaDistribution mix({{r("1/4"), r("1/2")}}, {{r("1/2"), Rat(1), r("1/2")}});
  CHECK(mix.mean() == r("1/2"));
  CHECK(mix.quantile(r("1/4")) == r("1/4"));
  CHECK(mix.quantile(r("3/4")) == r("3/4"));
}

TEST_CASE("expected apportionment examples") {
  Instance a({5, 3, 1}, 4), b({8, 3, 1}, 6);
  for (auto tb : {TieBreak::Uniform, TieBreak::LexMax, TieBreak::LexMin, TieBreak::SeededRandom})
    CHECK(expected_apportionment(a, DeltaDistribution::point(r("1/4")), tb) ==
          std::vector<Rat>{Rat(2), Rat(1), Rat(1)});
  auto e = expected_apportionment(b, DeltaDistribution::uniform(), TieBreak::Uniform);
  std::vector<Rat> want(3);
  const std::vector<std::pair<Rat, Seats>> cells{
      {r("1/5"), {3, 2, 1}}, {r("3/10"), {4, 1, 1}}, {r("3/10"), {4, 2, 0}}, {r("1/5"), {5, 1, 0}}};
  for (auto& [w, x] : cells)
    for (std::size_t i = 0; i < 3; ++i) want[i] += w * ri(x[i]);
  CHECK(e == want);
  CHECK(sum(e) == Rat(6));
  CHECK_THROWS_AS(expected_apportionment(a, DeltaDistribution::point(r("1/2")), TieBreak::SeededRandom), Error);
}

TEST_CASE("expected apportionment matches the brute-force oracle") {
  std::mt19937_64 rng(31);
  const std::vector<TieBreak> tbs{TieBreak::Uniform, TieBreak::LexMax, TieBreak::LexMin};
  for (int rep = 0; rep < 120; ++rep) {
    Instance inst = oracle::random_instance(rng, 4, 9, 8, true);
    Rat at = oracle::random_delta(rng, 6);
    Rat lo = oracle::random_delta(rng, 10), hi = oracle::random_delta(rng, 10);
    if (hi < lo) std::swap(lo, hi);
    if (lo == hi) hi = Rat(1), lo = Rat(0);
    DeltaDistribution g({{at, r("1/3")}, {Rat(1), r("1/6")}}, {{lo, hi, r("1/2")}});
    TieBreak tb = tbs[rep % tbs.size()];
    auto e = expected_apportionment(inst, g, tb);
    CHECK(e == brute_expected(inst, g, tb));
    CHECK(sum(e) == ri(inst.house()));
  }
}

TEST_CASE("Adams/Jefferson mixture stays within (H+1)/2 of quota") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    Instance inst = oracle::random_instance(rng, 10, 100, 30, true);
    auto e = expected_apportionment(inst, DeltaDistribution::adams_jefferson(), TieBreak::Uniform);
    auto q = quotas(inst);
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(abs(e[i] - q[i]) < ri(inst.house() + 1) / Rat(2));
  }
}

TEST_CASE("randomized divisor sampling") {
  Instance a({5, 3, 1}, 4), b({8, 3, 1}, 6);
  auto g = DeltaDistribution::uniform();
  CHECK(sample_randomized_divisor(a, DeltaDistribution::point(r("1/4")), TieBreak::LexMax, 1) == Seats{2, 1, 1});
  CHECK(sample_randomized_divisor(b, g, TieBreak::SeededRandom, 99) ==
        sample_randomized_divisor(b, g, TieBreak::SeededRandom, 99));
  auto one = sample_randomized_divisor_batch(b, g, TieBreak::SeededRandom, 5, 2000, 1);
  auto many = sample_randomized_divisor_batch(b, g, TieBreak::SeededRandom, 5, 2000, 4);
  CHECK(one == many);

  const std::size_t reps = 100000;
  auto draws = sample_randomized_divisor_batch(b, g, TieBreak::Uniform, 12345, reps);
  double m = 0, m2 = 0;
  for (auto& x : draws) {
    m += x[0];
    m2 += double(x[0]) * x[0];
  }
  m /= reps;
  double sd = std::sqrt(m2 / reps - m * m);
  double exact = expected_apportionment(b, g, TieBreak::Uniform)[0].to_double();
  CHECK(std::fabs(m - exact) <= 3 * sd / std::sqrt(double(reps)));
}

TEST_CASE("paired shifts") {
  auto two = paired_shifts(2, 4);
  CHECK(two.deltas[0] + two.deltas[1] == Rat(1));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto five = paired_shifts(5, seed);
    Rat s = sum(five.deltas);
    CHECK(s >= Rat(2));
    CHECK(s <= Rat(3));
    for (auto& d : five.deltas) {
      CHECK(d.sign() >= 0);
      CHECK(d <= Rat(1));
    }
  }
  CHECK(paired_shifts(1, 77).deltas == paired_shifts(1, 77).deltas);
  CHECK_FALSE(paired_shifts(3, 1).deltas == paired_shifts(3, 2).deltas);
  CHECK(iid_shifts(4, 3).deltas.size() == 4);
}

TEST_CASE("fixed-divisor method") {
  Instance hundred({50, 30, 20}, 13);
  ShiftVector s{{r("3/10"), r("7/20"), r("53/100")}};
  CHECK(apportion_fixed_divisor(hundred, s) == Seats{7, 4, 3});
  CHECK(apportion_fixed_divisor(Instance({3, 2, 1}, 12), ShiftVector{{Rat(0), Rat(1), r("1/2")}}) == Seats{6, 4, 2});
  CHECK_THROWS_AS(apportion_fixed_divisor(hundred, ShiftVector{{Rat(0)}}), Error);
  // A shift equal to the remainder gives no extra seat.
  CHECK(apportion_fixed_divisor(hundred, ShiftVector{{r("1/2"), r("9/10"), r("3/5")}}) == Seats{6, 3, 2});

  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 100; ++rep) {
    Instance inst = oracle::random_instance(rng, 6, 50, 40);
    if (inst.size() != 6) continue;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Seats x = apportion_fixed_divisor(inst, paired_shifts(6, seed));
      std::int64_t total = 0;
      for (auto v : x) total += v;
      CHECK(std::llabs(total - inst.house()) <= 3);
      CHECK(check_axioms(x, inst).quota_compliant());
    }
  }

  auto a = sample_fixed_divisor_batch(hundred, 9, 500, true, 1);
  auto b = sample_fixed_divisor_batch(hundred, 9, 500, true, 3);
  CHECK(a == b);
  CHECK(a[17] == apportion_fixed_divisor(hundred, paired_shifts(3, derive_seed(9, 17))));
}

TEST_CASE("fixed-divisor population monotonicity with shared shifts") {
  std::mt19937_64 rng(15);
  for (int rep = 0; rep < 300; ++rep) {
    Instance inst = oracle::random_instance(rng, 5, 40, 30);
    auto p2 = inst.populations();
    std::size_t grow = rng() % p2.size();
    p2[grow] += 1 + static_cast<std::int64_t>(rng() % 20);
    Instance other(p2, inst.house() + static_cast<std::int64_t>(rng() % 5));
    ShiftVector s = paired_shifts(inst.size(), rng());
    Seats x = apportion_fixed_divisor(inst, s), y = apportion_fixed_divisor(other, s);
    // p'_i/p'_j >= p_i/p_j holds for i = grow against every j.
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j == grow) continue;
      CHECK_FALSE((x[grow] > y[grow] && x[j] < y[j]));
    }
  }
}

TEST_CASE("hoeffding bound") {
  CHECK(hoeffding_bound(10, std::sqrt(5 * std::log(20.0))) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(hoeffding_bound(50, 1e6) == 0.0);
  CHECK(hoeffding_bound(50, Rat(8)) < 0.2);
  CHECK(hoeffding_bound(50, Rat(7)) == doctest::Approx(2 * std::exp(-98.0 / 50)));
  CHECK_THROWS_AS(hoeffding_bound(0, 1.0), Error);
  CHECK_THROWS_AS(hoeffding_bound(5, 0.0), Error);
}

TEST_CASE("stationary adversaries") {
  struct Case {
    std::int64_t h;
    const char* delta;
    const char* eps;
    Rat floor;
  };
  for (const Case& c : {Case{10, "0", "1/2", r("17/2")}, Case{2, "1", "1/2", r("3/2")}, Case{10, "1/2", "1", Rat(9)}}) {
    Instance inst = adversary_stationary(c.h, r(c.delta), r(c.eps));
    CHECK(inst.house() == c.h);
    auto q = quotas(inst);
    for (auto& x : expand(apportion_stationary(inst, r(c.delta)))) CHECK(abs(ri(x[0]) - q[0]) >= c.floor);
  }
  CHECK_THROWS_AS(adversary_stationary(1, Rat(0), Rat(1)), Error);
  CHECK_THROWS_AS(adversary_stationary(5, Rat(0), Rat(0)), Error);
}

TEST_CASE("fixed-divisor adversaries") {
  auto deviation = [](const std::vector<Rat>& d, const Rat& eps) {
    Instance inst = adversary_fixed_divisor(d, eps);
    Seats x = apportion_fixed_divisor(inst, ShiftVector{d});
    std::int64_t total = 0;
    for (auto v : x) total += v;
    return abs(ri(total - inst.house()));
  };
  CHECK(deviation(std::vector<Rat>(6, r("1/2")), r("1/4")) >= r("7/4"));
  std::vector<Rat> alt;
  for (int i = 0; i < 8; ++i) alt.push_back(Rat(i % 2));
  CHECK(deviation(alt, r("1/8")) >= r("23/8"));
  CHECK_NOTHROW(adversary_fixed_divisor({r("1/3"), r("2/3")}, r("1/2")));

  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t n = 2 + rng() % 9;
    std::vector<Rat> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(oracle::random_delta(rng, 8));
    Rat eps = Rat(1) / ri(1 + static_cast<std::int64_t>(rng() % 8));
    CHECK(deviation(d, eps) >= ri(static_cast<std::int64_t>(n)) / Rat(2) - Rat(1) - eps);
  }
}

TEST_CASE("population-ratio bound") {
  auto rep = fixed_pop_bound_check(Instance({8, 3, 1}, 6), DeltaDistribution::uniform());
  CHECK(rep.bound[0] == r("9/2"));
  CHECK(rep.holds);
  auto eq = fixed_pop_bound_check(Instance({4, 4, 4}, 7), DeltaDistribution::uniform());
  CHECK(eq.bound == std::vector<Rat>(3, Rat(1)));
  CHECK_THROWS_AS(fixed_pop_bound_check(Instance({4, 4}, 3), DeltaDistribution::point(Rat(0))), Error);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    Instance inst = oracle::random_instance(rng, 6, 3, 20, true);
    auto rp = fixed_pop_bound_check(inst, DeltaDistribution::adams_jefferson());
    CHECK(rp.holds);
    for (auto& m : rp.margin) CHECK(m.sign() >= 0);
  }
}
