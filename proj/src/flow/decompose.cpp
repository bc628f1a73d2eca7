#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>

#include "apportion/error.hpp"
#include "apportion/flow.hpp"
#include "apportion/random.hpp"
#include "quota_bounds.hpp"

namespace apportion {

namespace {

using Matrix = std::vector<std::vector<Rat>>;  // [state][seat]

// Finds a 0/1 sequence on the smallest face containing R: zero entries of R
// stay zero and every cumulative count equals C_R when C_R is integral, or
// one of its two neighbouring integers otherwise.
class VertexSearch {
 public:
  VertexSearch(const Matrix& r, std::int64_t horizon) : r_(r), horizon_(horizon), lo_(r.size()), hi_(r.size()) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      Rat c;
      lo_[i].push_back(0);
      hi_[i].push_back(0);
      for (std::int64_t t = 0; t < horizon; ++t) {
        c += r[i][t];
        lo_[i].push_back(to_int64(c.floor()));
        hi_[i].push_back(to_int64(c.ceil()));
      }
    }
  }

  bool run(SeatSequence& out) {
    Seats a(r_.size(), 0);
    out.assign.clear();
    return visit(0, a, out);
  }

 private:
  bool visit(std::int64_t t, Seats& a, SeatSequence& out) {
    if (t == horizon_) return true;
    if (dead_.count({t, a})) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (r_[i][t].sign() == 0) continue;
      ++a[i];
      bool fits = true;
      for (std::size_t j = 0; j < a.size() && fits; ++j)
        fits = a[j] >= lo_[j][t + 1] && a[j] <= hi_[j][t + 1];
      if (fits) {
        out.assign.push_back(i);
        if (visit(t + 1, a, out)) return true;
        out.assign.pop_back();
      }
      --a[i];
    }
    dead_.insert({t, a});
    return false;
  }

  const Matrix& r_;
  std::int64_t horizon_;
  std::vector<std::vector<std::int64_t>> lo_, hi_;
  std::set<std::pair<std::int64_t, Seats>> dead_;
};

}  // namespace

Decomposition decompose_quota(const Instance& inst, const FlowLimits& limits) {
  const std::size_t n = inst.size();
  const std::int64_t P = inst.total();
  if (P > limits.max_horizon || static_cast<std::size_t>(P) * n > limits.max_nodes)
    throw Error(ErrorKind::ResourceCap, "decomposition size exceeds limits");

  Matrix r(n, std::vector<Rat>(P));
  for (std::size_t i = 0; i < n; ++i)
    for (std::int64_t t = 0; t < P; ++t) r[i][t] = Rat(inst.population(i), P);

  Decomposition dec;
  Rat remaining(1);
  const std::size_t max_rounds = 3 * n * static_cast<std::size_t>(P) + 1;
  for (std::size_t round = 0;; ++round) {
    if (round >= max_rounds) throw Error(ErrorKind::Internal, "decomposition did not terminate");
    SeatSequence x;
    if (!VertexSearch(r, P).run(x))
      throw Error(ErrorKind::Internal, "no integral point on the face of the residual after " +
                                           std::to_string(round) + " rounds");

    Rat step(1);
    Seats a(n, 0);
    std::vector<Rat> c(n);
    for (std::int64_t t = 0; t < P; ++t) {
      step = min(step, r[x.assign[t]][t]);
      ++a[x.assign[t]];
      for (std::size_t i = 0; i < n; ++i) {
        c[i] += r[i][t];
        const Rat lo(detail::lower_bound_at(inst, i, t + 1));
        const Rat hi(detail::upper_bound_at(inst, i, t + 1));
        const Rat ai(a[i]);
        if (ai > lo) step = min(step, (c[i] - lo) / (ai - lo));
        if (ai < hi) step = min(step, (hi - c[i]) / (hi - ai));
      }
    }
    if (step.sign() <= 0) throw Error(ErrorKind::Internal, "decomposition step is not positive");

    dec.points.push_back(x);
    dec.weights.push_back(remaining * step);
    if (step == Rat(1)) break;

    const Rat keep = Rat(1) - step;
    for (std::size_t i = 0; i < n; ++i)
      for (std::int64_t t = 0; t < P; ++t) {
        Rat v = r[i][t];
        if (x.assign[t] == i) v -= step;
        r[i][t] = v / keep;
      }
    remaining *= keep;
  }
  return dec;
}

Seats sample_hm_method(const Instance& inst, const Decomposition& dec, std::int64_t house, std::uint64_t seed) {
  if (house < 0 || house > inst.total())
    throw Error(ErrorKind::InvalidArgument, "house size must lie in 0..P");
  if (dec.points.empty()) throw Error(ErrorKind::InvalidArgument, "empty decomposition");
  std::mt19937_64 rng(seed);
  const Rat u = dyadic_uniform(rng);
  Rat cum;
  for (std::size_t j = 0; j < dec.points.size(); ++j) {
    cum += dec.weights[j];
    if (u < cum || j + 1 == dec.points.size()) return dec.points[j].prefix(inst.size(), house);
  }
  return {};
}

Seats sample_hm_method(const Instance& inst, std::int64_t house, std::uint64_t seed) {
  static std::mutex mu;
  static std::map<std::vector<std::int64_t>, Decomposition> cache;
  const Decomposition* dec = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(inst.populations());
    if (it == cache.end()) it = cache.emplace(inst.populations(), decompose_quota(inst)).first;
    dec = &it->second;
  }
  return sample_hm_method(inst, *dec, house, seed);
}

}  // namespace apportion
