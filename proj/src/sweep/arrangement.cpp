#include <algorithm>
#include <set>

#include "apportion/sweep.hpp"

namespace apportion {

namespace {

void require_general_position(const ArrangementSpec& spec) {
  if (spec.empty()) throw Error(ErrorKind::DegenerateArrangement, "arrangement has no lines");
  std::set<Rat> slopes;
  for (const auto& l : spec)
    if (!slopes.insert(l.m).second)
      throw Error(ErrorKind::DegenerateArrangement, "two lines share slope " + l.m.str());
}

bool instance_ready(const ArrangementSpec& spec) {
  for (const auto& l : spec) {
    if (l.m.sign() <= 0) return false;
    Rat r = l.c / l.m;
    if (!r.is_integer() || r.sign() < 0) return false;
  }
  return true;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rat eval(const ArrangementLine& l, const Rat& x) { return l.m * x + l.c; }

// Sample abscissae in [0,1]: endpoints, vertices and the midpoints between.
std::vector<Rat> samples(const ArrangementSpec& spec) {
  std::vector<Rat> xs{Rat(0), Rat(1)};
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t j = i + 1; j < spec.size(); ++j) {
      Rat x = (spec[j].c - spec[i].c) / (spec[i].m - spec[j].m);
      if (x.sign() > 0 && x < Rat(1)) xs.push_back(x);
    }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rat> all;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) all.push_back((xs[i - 1] + xs[i]) / Rat(2));
    all.push_back(xs[i]);
  }
  return all;
}

}  // namespace

bool is_normalized(const ArrangementSpec& spec) {
  for (const auto& l : spec) {
    if (l.m <= Rat(1) || l.m >= Rat(2)) return false;
    Rat r = l.c / l.m;
    if (!r.is_integer() || r.sign() <= 0) return false;
  }
  return !spec.empty();
}

ArrangementSpec normalize_arrangement(const ArrangementSpec& spec) {
  require_general_position(spec);
  ArrangementSpec out = spec;

  // Shear to positive slopes, then compress them into (1,2). Both keep every
  // vertex on the same side of every other line.
  Rat mmin = spec[0].m, cmin = spec[0].c;
  for (const auto& l : spec) {
    mmin = min(mmin, l.m);
    cmin = min(cmin, l.c);
  }
  const Rat hundredth(1, 100);
  Rat mmax(0);
  for (auto& l : out) {
    l.m = l.m - mmin + hundredth;
    mmax = max(mmax, l.m);
  }
  for (auto& l : out) l.m = Rat(99, 100) * l.m / mmax + Rat(1);

  // Positive intercepts, then the smallest scale making every c_i/m_i integral.
  BigInt num_gcd(0), den_lcm(1);
  for (auto& l : out) {
    l.c = l.c - cmin + hundredth;
    Rat r = l.c / l.m;
    num_gcd = gcd(num_gcd, r.num());
    den_lcm = lcm(den_lcm, r.den());
  }
  Rat alpha(den_lcm, num_gcd);
  for (auto& l : out) l.c = alpha * l.c;
  return out;
}

ArrangementInstance instance_from_arrangement(const ArrangementSpec& spec, std::int64_t k) {
  require_general_position(spec);
  if (k < 0 || k >= static_cast<std::int64_t>(spec.size()))
    throw Error(ErrorKind::InvalidArgument, "level " + std::to_string(k) + " outside 0.." +
                                                std::to_string(spec.size() - 1));
  ArrangementSpec lines = instance_ready(spec) ? spec : normalize_arrangement(spec);

  // Keep only lines meeting the k-level somewhere on [0,1].
  const auto xs = samples(lines);
  std::vector<bool> touches(lines.size(), false), below(lines.size(), true);
  for (const auto& x : xs) {
    std::vector<Rat> vals;
    for (const auto& l : lines) vals.push_back(eval(l, x));
    auto sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    const Rat& level = sorted[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (vals[i] == level) touches[i] = true;
      if (vals[i] >= level) below[i] = false;
    }
  }
  ArrangementInstance out{{}, k, {}, BigInt(1), Instance({1}, 1)};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (touches[i]) out.normalized.push_back(lines[i]);
    else if (below[i]) --out.level;
  }

  BigInt house = out.level + 1;
  for (const auto& l : out.normalized) {
    out.rational_populations.push_back(Rat(1) / l.m);
    out.scale = lcm(out.scale, out.rational_populations.back().den());
    house += (l.c / l.m).num();
  }
  BigInt total = 0;
  std::vector<BigInt> scaled;
  for (const auto& p : out.rational_populations) {
    scaled.push_back((p * Rat(out.scale)).num());
    total += scaled.back();
  }
  const BigInt cap = BigInt(1) << 40;
  if (house > cap || total > cap)
    throw Error(ErrorKind::ResourceCap, "normalized arrangement needs house " + house.get_str() +
                                            " and total population " + total.get_str() + ", above 2^40");
  std::vector<std::int64_t> pops;
  for (const auto& v : scaled) pops.push_back(to_int64(v));
  out.instance = Instance(std::move(pops), to_int64(house));
  return out;
}

}  // namespace apportion
