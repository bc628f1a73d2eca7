#include <doctest.h>

#include <cmath>
#include <random>

#include "apportion/error.hpp"
#include "apportion/sweep.hpp"
#include "../oracles.hpp"

using namespace apportion;

namespace {

Rat r(const char* s) { return Rat::parse(s); }
Rat ri(std::int64_t v) { return Rat(static_cast<long long>(v)); }

Rat line_at(const Instance& inst, const Line& l, const Rat& d) {
  return (ri(l.offset) + d) / ri(inst.population(l.state));
}

// Lines of the whole family that equal lambda_H somewhere on [0,1]. The level
// is piecewise linear with vertices among pairwise intersections, so checking
// 0, 1 and every intersection suffices.
std::set<Line> brute_touching(const Instance& inst) {
  std::vector<Line> all;
  for (std::size_t i = 0; i < inst.size(); ++i)
    for (std::int64_t t = 0; t < inst.house(); ++t) all.push_back({i, t});
  std::set<Rat> ds{Rat(0), Rat(1)};
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      Rat pa = ri(inst.population(all[a].state)), pb = ri(inst.population(all[b].state));
      if (pa == pb) continue;
      // (ta + d)/pa = (tb + d)/pb
      Rat d = (ri(all[b].offset) * pa - ri(all[a].offset) * pb) / (pb - pa);
      if (d.sign() >= 0 && d <= Rat(1)) ds.insert(d);
    }
  std::set<Line> out;
  for (const Rat& d : ds) {
    Rat level = oracle::brute_level(inst, d, inst.house());
    for (auto& l : all)
      if (line_at(inst, l, d) == level) out.insert(l);
  }
  return out;
}

std::set<Seats> set_of(const Outcome& o) { return oracle::expansion_set(o); }

bool quota_ok(const Instance& inst, const Outcome& o, bool upper) {
  auto q = quotas(inst);
  for (auto& x : oracle::expansion_set(o)) {
    auto rep = check_axioms(x, inst);
    if (upper ? !rep.upper_quota : !rep.lower_quota) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("atlas of two small instances") {
  auto a = breakpoint_atlas(Instance({5, 3, 1}, 4));
  CHECK(a.breakpoints == std::vector<Rat>{r("1/2")});
  REQUIRE(a.interval_outcomes.size() == 2);
  CHECK(a.interval_outcomes[0] == Outcome({2, 1, 1}, {}, 0));
  CHECK(a.interval_outcomes[1] == Outcome({3, 1, 0}, {}, 0));
  CHECK(set_of(a.breakpoint_outcomes[0]) == std::set<Seats>{{2, 1, 1}, {2, 2, 0}, {3, 1, 0}});

  auto b = breakpoint_atlas(Instance({8, 3, 1}, 6));
  CHECK(b.breakpoints == std::vector<Rat>{r("1/5"), r("1/2"), r("4/5")});
  std::vector<Seats> seq;
  for (auto& o : b.interval_outcomes) seq.push_back(o.base());
  CHECK(seq == std::vector<Seats>{{3, 2, 1}, {4, 1, 1}, {4, 2, 0}, {5, 1, 0}});
  CHECK(set_of(b.breakpoint_outcomes[0]) == std::set<Seats>{{3, 2, 1}, {4, 1, 1}});
  CHECK(set_of(b.breakpoint_outcomes[1]) == std::set<Seats>{{4, 1, 1}, {4, 2, 0}});
  CHECK(set_of(b.breakpoint_outcomes[2]) == std::set<Seats>{{4, 2, 0}, {5, 1, 0}});
  CHECK(b.at_zero.has_value());
  CHECK(b.at_one == Outcome({5, 1, 0}, {}, 0));

  auto c = breakpoint_atlas(Instance({3, 2, 1}, 2));
  CHECK_FALSE(c.at_zero.has_value());
  CHECK_THROWS_AS(c.outcome_at(Rat(0)), Error);
}

TEST_CASE("atlas agrees with pointwise evaluation and has the cell invariants") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    Instance inst = oracle::random_instance(rng, 4, 12, 10);
    auto atlas = breakpoint_atlas(inst);
    REQUIRE(atlas.interval_outcomes.size() == atlas.breakpoints.size() + 1);
    for (std::size_t k = 0; k + 1 < atlas.breakpoints.size(); ++k) CHECK(atlas.breakpoints[k] < atlas.breakpoints[k + 1]);
    for (std::size_t k = 0; k + 1 < atlas.interval_outcomes.size(); ++k) {
      CHECK_FALSE(atlas.interval_outcomes[k] == atlas.interval_outcomes[k + 1]);
      auto at = set_of(atlas.breakpoint_outcomes[k]);
      for (auto& x : set_of(atlas.interval_outcomes[k])) CHECK(at.count(x));
      for (auto& x : set_of(atlas.interval_outcomes[k + 1])) {
        CHECK(at.count(x));
        for (auto& y : set_of(atlas.interval_outcomes[k])) CHECK(majorizes(x, y));
      }
    }
    for (int s = 0; s < 60; ++s) {
      Rat d = oracle::random_delta(rng, s % 2 ? 1000 : 12);
      if (d.sign() == 0 && inst.house() < static_cast<std::int64_t>(inst.size())) continue;
      CHECK(set_of(atlas.outcome_at(d)) == oracle::brute_stationary(inst, d));
    }
    for (auto& d : atlas.breakpoints) CHECK(set_of(atlas.outcome_at(d)) == oracle::brute_stationary(inst, d));
  }
}

TEST_CASE("active lines") {
  Instance b({8, 3, 1}, 6);
  auto act = active_lines(b);
  std::set<Line> s(act.begin(), act.end());
  for (Line l : {Line{0, 3}, Line{0, 4}, Line{1, 1}, Line{2, 0}}) CHECK(s.count(l));
  CHECK_FALSE(s.count(Line{0, 0}));

  auto single = active_lines(Instance({1}, 5));
  CHECK(single.size() >= 1);
  CHECK(single.size() <= 3);
  CHECK(std::find(single.begin(), single.end(), Line{0, 4}) != single.end());

  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 150; ++rep) {
    Instance inst = oracle::random_instance(rng, 3, 10, 8);
    auto got = active_lines(inst);
    CHECK(got.size() <= 2 * inst.size() - 1);
    CHECK(std::set<Line>(got.begin(), got.end()) == brute_touching(inst));
  }
}

TEST_CASE("level sweep pieces match the brute-force level") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 100; ++rep) {
    Instance inst = oracle::random_instance(rng, 4, 20, 12);
    auto sw = sweep_level(inst);
    REQUIRE_FALSE(sw.pieces.empty());
    CHECK(sw.pieces.front().lo == Rat(0));
    CHECK(sw.pieces.back().hi == Rat(1));
    for (auto& piece : sw.pieces) {
      Rat mid = (piece.lo + piece.hi) / Rat(2);
      CHECK(line_at(inst, piece.line, mid) == oracle::brute_level(inst, mid, inst.house()));
    }
  }
}

TEST_CASE("quota partition") {
  std::mt19937_64 rng(17);
  std::vector<Instance> cases{Instance({5, 3, 1}, 4), Instance({8, 3, 1}, 6), Instance({3, 2, 1}, 12)};
  for (int rep = 0; rep < 200; ++rep) cases.push_back(oracle::random_instance(rng, 5, 30, 15));
  for (auto& inst : cases) {
    auto qp = quota_partition(inst);
    CHECK(qp.tau_low.sign() >= 0);
    CHECK(qp.tau_high <= Rat(1));
    auto atlas = breakpoint_atlas(inst);
    std::vector<Rat> probes;
    std::vector<const Outcome*> outs;
    for (std::size_t k = 0; k < atlas.interval_outcomes.size(); ++k) {
      Rat lo = k == 0 ? Rat(0) : atlas.breakpoints[k - 1];
      Rat hi = k == atlas.breakpoints.size() ? Rat(1) : atlas.breakpoints[k];
      probes.push_back((lo + hi) / Rat(2));
      outs.push_back(&atlas.interval_outcomes[k]);
      if (k < atlas.breakpoints.size()) {
        probes.push_back(atlas.breakpoints[k]);
        outs.push_back(&atlas.breakpoint_outcomes[k]);
      }
    }
    bool seen_upper_fail = false, seen_lower_ok = false;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      bool up = quota_ok(inst, *outs[k], true);
      bool low = quota_ok(inst, *outs[k], false);
      if (probes[k] <= qp.tau_high) CHECK(up);
      if (probes[k] >= qp.tau_low) CHECK(low);
      // Upper quota on a prefix, lower quota on a suffix.
      if (!up) seen_upper_fail = true;
      if (seen_upper_fail) CHECK_FALSE(up);
      if (low) seen_lower_ok = true;
      if (seen_lower_ok) CHECK(low);
    }
  }
  auto integral = quota_partition(Instance({3, 2, 1}, 12));
  CHECK(integral.tau_low <= integral.tau_high);
}

TEST_CASE("power mean exact cases") {
  Instance b({8, 3, 1}, 6), a({5, 3, 1}, 4);
  CHECK(apportion_power_mean(b, Rat(1)) == apportion_stationary(b, r("1/2")));
  CHECK(apportion_power_mean(a, PowerMeanParam::pos_inf()) == apportion_stationary(a, Rat(1)));
  CHECK(apportion_power_mean(b, PowerMeanParam::neg_inf()) == apportion_stationary(b, Rat(0)));
  CHECK_THROWS_AS(apportion_power_mean(Instance({3, 2, 1}, 2), Rat(0)), Error);
  CHECK(PowerMeanParam::parse("-inf") == PowerMeanParam::neg_inf());
  CHECK(PowerMeanParam::parse("+inf") == PowerMeanParam::pos_inf());
  CHECK(PowerMeanParam::parse("3/2").value() == r("3/2"));
  CHECK(PowerMeanParam::neg_inf() < PowerMeanParam(Rat(-100)));
  CHECK(PowerMeanParam(Rat(100)) < PowerMeanParam::pos_inf());

  long double margin = 0;
  auto hill = oracle::brute_power_mean(Instance({50, 30, 20}, 13), 0, margin);
  CHECK(set_of(apportion_power_mean(Instance({50, 30, 20}, 13), Rat(0))) == hill);
}

TEST_CASE("power mean agrees with a long double oracle away from ties") {
  std::mt19937_64 rng(41);
  const std::vector<Rat> qs{r("-3"), r("-1"), r("-1/2"), Rat(0), r("1/3"), Rat(1), Rat(2), r("7/2")};
  int compared = 0;
  for (int rep = 0; rep < 250; ++rep) {
    Instance inst = oracle::random_instance(rng, 4, 40, 10, true);
    const Rat& q = qs[rep % qs.size()];
    long double margin = 0;
    auto brute = oracle::brute_power_mean(inst, q.to_double(), margin);
    if (margin < 1e-12L || brute.empty()) continue;
    ++compared;
    CHECK(set_of(apportion_power_mean(inst, q)) == brute);
  }
  CHECK(compared > 150);
}

TEST_CASE("power mean ties at exactly representable signposts") {
  // Equal populations tie under every exponent.
  auto o = apportion_power_mean(Instance({1, 1}, 3), r("5/3"));
  CHECK(set_of(o) == std::set<Seats>{{2, 1}, {1, 2}});
  CHECK_THROWS_AS(apportion_power_mean(Instance({1, 1}, 1), Rat(-1)), Error);
  CHECK(set_of(apportion_power_mean(Instance({1, 1}, 1), r("1/2"))) == std::set<Seats>{{1, 0}, {0, 1}});
}

TEST_CASE("power mean breakpoints") {
  auto one = power_mean_breakpoints(Instance({4}, 5), PowerMeanParam::neg_inf(), PowerMeanParam::pos_inf(), r("1/100"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].outcome == Outcome({5}, {}, 0));

  auto segs = power_mean_breakpoints(Instance({8, 3, 1}, 6), PowerMeanParam::neg_inf(), PowerMeanParam::pos_inf(),
                                     r("1/1000"));
  REQUIRE(segs.size() >= 2);
  CHECK(segs.front().outcome.base() == Seats{3, 2, 1});
  CHECK(segs.back().outcome.base() == Seats{5, 1, 0});
  for (std::size_t k = 0; k + 1 < segs.size(); ++k) {
    CHECK(segs[k].hi <= segs[k + 1].lo);
    CHECK(majorizes(segs[k + 1].outcome.lex_min(), segs[k].outcome.lex_max()));
  }

  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    Instance inst = oracle::random_instance(rng, 4, 30, 10, true);
    auto s = power_mean_breakpoints(inst, Rat(-2), Rat(3), r("1/100"));
    REQUIRE_FALSE(s.empty());
    CHECK(s.front().outcome == apportion_power_mean(inst, Rat(-2)));
    CHECK(s.back().outcome == apportion_power_mean(inst, Rat(3)));
    for (auto& x : set_of(s.back().outcome))
      for (auto& y : set_of(s.front().outcome)) CHECK(majorizes(x, y));
  }
}

TEST_CASE("arrangement instances") {
  ArrangementSpec three_lines{{r("7/4"), r("7/4")}, {Rat(1), Rat(2)}, {r("8/11"), r("24/11")}};
  auto ai = instance_from_arrangement(three_lines, 0);
  CHECK(ai.instance.house() == 7);
  CHECK(ai.level == 0);
  CHECK(ai.rational_populations == std::vector<Rat>{r("4/7"), Rat(1), r("11/8")});
  // Populations proportional to (4/7, 1, 11/8).
  const auto& p = ai.instance.populations();
  CHECK(Rat(static_cast<long long>(p[0])) / Rat(static_cast<long long>(p[1])) == r("4/7"));
  CHECK(Rat(static_cast<long long>(p[2])) / Rat(static_cast<long long>(p[1])) == r("11/8"));

  auto single = instance_from_arrangement({{r("3/2"), r("3/2")}}, 0);
  CHECK(single.instance.size() == 1);
  CHECK(breakpoint_atlas(single.instance).breakpoints.empty());

  CHECK_THROWS_AS(instance_from_arrangement({{Rat(1), Rat(0)}, {Rat(1), Rat(3)}}, 0), Error);

  auto norm = normalize_arrangement({{r("-1/2"), Rat(3)}, {Rat(2), r("-1")}, {Rat(0), r("1/3")}});
  CHECK(is_normalized(norm));
  CHECK_FALSE(is_normalized({{Rat(3), Rat(3)}}));
}

TEST_CASE("normalization keeps the k-level complexity") {
  std::mt19937_64 rng(78);
  for (int rep = 0; rep < 60; ++rep) {
    ArrangementSpec spec;
    std::set<Rat> slopes;
    while (spec.size() < 5) {
      Rat m(BigInt(static_cast<long>(rng() % 41) - 20), BigInt(static_cast<long>(1 + rng() % 5)));
      Rat c(BigInt(static_cast<long>(rng() % 41) - 20), BigInt(static_cast<long>(1 + rng() % 5)));
      if (!slopes.insert(m).second) continue;
      spec.push_back({m, c});
    }
    auto norm = normalize_arrangement(spec);
    CHECK(is_normalized(norm));
    for (std::size_t k = 0; k < spec.size(); ++k)
      CHECK(oracle::klevel_vertices(norm, k, true) == oracle::klevel_vertices(spec, k, true));
  }
}

TEST_CASE("arrangement breakpoints cover the k-level vertices") {
  // Slopes in (1,2) with integral c/m are encoded without rescaling.
  std::mt19937_64 rng(77);
  int tested = 0;
  for (int rep = 0; rep < 80; ++rep) {
    ArrangementSpec spec;
    std::set<Rat> slopes;
    while (spec.size() < 5) {
      long den = 2 + static_cast<long>(rng() % 6);
      Rat m(BigInt(den + 1 + static_cast<long>(rng() % (den - 1))), BigInt(den));
      if (!slopes.insert(m).second) continue;
      spec.push_back({m, m * Rat(static_cast<long>(rng() % 4))});
    }
    std::size_t k = rng() % 5;
    std::size_t z = oracle::klevel_vertices(spec, k);
    auto ai = instance_from_arrangement(spec, static_cast<std::int64_t>(k));
    ++tested;
    std::size_t at_h = breakpoint_atlas(ai.instance).breakpoints.size();
    std::size_t at_h1 =
        ai.instance.house() > 1 ? breakpoint_atlas(ai.instance.with_house(ai.instance.house() - 1)).breakpoints.size() : 0;
    CHECK(std::max(at_h, at_h1) >= (z + 1) / 2);
    // The (H-1)-level traces the k-level, so the level line changes exactly
    // at its vertices.
    CHECK(sweep_level(ai.instance).pieces.size() == z + 1);
  }
  CHECK(tested == 80);

  ArrangementSpec wide{{r("3/2"), Rat(0)}, {Rat(-5), r("1/7")}, {r("1/3"), Rat(9)}, {Rat(4), r("-2/3")}};
  try {
    auto ai = instance_from_arrangement(wide, 1);
    CHECK(ai.instance.house() >= 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceCap);
  }
}
