#include <algorithm>
#include <cmath>
#include <memory>

#include <mpfr.h>

#include "../core/selection.hpp"
#include "apportion/sweep.hpp"

namespace apportion {

std::string PowerMeanParam::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    case Kind::Finite: break;
  }
  return value_.str();
}

PowerMeanParam PowerMeanParam::parse(const std::string& text) {
  if (text == "-inf") return neg_inf();
  if (text == "+inf" || text == "inf") return pos_inf();
  return PowerMeanParam(Rat::parse(text));
}

std::strong_ordering operator<=>(const PowerMeanParam& a, const PowerMeanParam& b) {
  auto rank = [](const PowerMeanParam& p) {
    return p.kind() == PowerMeanParam::Kind::NegInf ? 0 : (p.kind() == PowerMeanParam::Kind::Finite ? 1 : 2);
  };
  if (rank(a) != rank(b)) return rank(a) <=> rank(b);
  if (a.finite()) return a.value() <=> b.value();
  return std::strong_ordering::equal;
}

namespace {

using detail::LineOrder;

int sign_of(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0 ? -1 : (cmp(a, b) > 0 ? 1 : 0); }

// Dean: harmonic mean 2t(t+1)/(2t+1).
class HarmonicOrder final : public LineOrder {
 public:
  explicit HarmonicOrder(const Instance& inst) : inst_(&inst) {}
  int compare(std::size_t i, std::int64_t t, std::size_t j, std::int64_t u) const override {
    BigInt lt(static_cast<long>(t)), lu(static_cast<long>(u));
    BigInt lhs = lt * (lt + 1) * (2 * lu + 1) * static_cast<long>(inst_->population(j));
    BigInt rhs = lu * (lu + 1) * (2 * lt + 1) * static_cast<long>(inst_->population(i));
    return sign_of(lhs, rhs);
  }
  bool zero_at_origin() const override { return true; }

 private:
  const Instance* inst_;
};

// Hill: geometric mean, compared through squares.
class GeometricOrder final : public LineOrder {
 public:
  explicit GeometricOrder(const Instance& inst) : inst_(&inst) {}
  int compare(std::size_t i, std::int64_t t, std::size_t j, std::int64_t u) const override {
    BigInt lt(static_cast<long>(t)), lu(static_cast<long>(u));
    BigInt pi(static_cast<long>(inst_->population(i))), pj(static_cast<long>(inst_->population(j)));
    return sign_of(lt * (lt + 1) * pj * pj, lu * (lu + 1) * pi * pi);
  }
  bool zero_at_origin() const override { return true; }

 private:
  const Instance* inst_;
};

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

struct Enclosure {
  std::unique_ptr<Mpfr> lo, hi;
};

// Certified enclosure of s_q(t) / p using directed rounding. The power mean
// is monotone in base and exponent, so corner evaluations bound it.
class GeneralOrder final : public LineOrder {
 public:
  GeneralOrder(const Instance& inst, const Rat& q) : inst_(&inst), q_(q) {}

  bool zero_at_origin() const override { return q_.sign() < 0; }

  int compare(std::size_t i, std::int64_t t, std::size_t j, std::int64_t u) const override {
    const auto pi = inst_->population(i), pj = inst_->population(j);
    if (t == u) {
      if (t == 0 && q_.sign() < 0) return 0;
      return pi == pj ? 0 : (pi > pj ? -1 : 1);
    }
    if (q_.sign() < 0 && (t == 0 || u == 0)) return t == 0 ? -1 : 1;
    for (mpfr_prec_t prec = 64; prec <= kMaxPrec; prec *= 2) {
      auto a = enclose(t, pi, prec);
      auto b = enclose(u, pj, prec);
      if (mpfr_less_p(a.hi->get(), b.lo->get())) return -1;
      if (mpfr_less_p(b.hi->get(), a.lo->get())) return 1;
    }
    return 0;  // not separated at the precision cap: reported as a tie
  }

 private:
  static constexpr mpfr_prec_t kMaxPrec = 4096;

  Enclosure enclose(std::int64_t t, std::int64_t p, mpfr_prec_t prec) const {
    Mpfr ql(prec), qh(prec), el(prec), eh(prec);
    mpfr_set_q(ql.get(), q_.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(qh.get(), q_.raw().get_mpq_t(), MPFR_RNDU);
    Mpfr ml(prec), mh(prec), tmp(prec), base(prec);

    // M = (t^q + (t+1)^q) / 2; t^q is increasing in q for t >= 1.
    mpfr_set_zero(ml.get(), 1);
    mpfr_set_zero(mh.get(), 1);
    for (std::int64_t b : {t, t + 1}) {
      if (b == 0) continue;  // only reached for q > 0, where 0^q = 0
      mpfr_set_si(base.get(), b, MPFR_RNDN);
      mpfr_pow(tmp.get(), base.get(), ql.get(), MPFR_RNDD);
      mpfr_add(ml.get(), ml.get(), tmp.get(), MPFR_RNDD);
      mpfr_pow(tmp.get(), base.get(), qh.get(), MPFR_RNDU);
      mpfr_add(mh.get(), mh.get(), tmp.get(), MPFR_RNDU);
    }
    mpfr_div_2ui(ml.get(), ml.get(), 1, MPFR_RNDD);
    mpfr_div_2ui(mh.get(), mh.get(), 1, MPFR_RNDU);

    // e = 1/q lies in [1/qh, 1/ql] for q of either sign.
    mpfr_ui_div(el.get(), 1, qh.get(), MPFR_RNDD);
    mpfr_ui_div(eh.get(), 1, ql.get(), MPFR_RNDU);

    Enclosure out{std::make_unique<Mpfr>(prec), std::make_unique<Mpfr>(prec)};
    bool first = true;
    for (auto* m : {&ml, &mh}) {
      for (auto* e : {&el, &eh}) {
        mpfr_pow(tmp.get(), m->get(), e->get(), MPFR_RNDD);
        if (first || mpfr_less_p(tmp.get(), out.lo->get())) mpfr_set(out.lo->get(), tmp.get(), MPFR_RNDD);
        mpfr_pow(tmp.get(), m->get(), e->get(), MPFR_RNDU);
        if (first || mpfr_greater_p(tmp.get(), out.hi->get())) mpfr_set(out.hi->get(), tmp.get(), MPFR_RNDU);
        first = false;
      }
    }
    mpfr_div_si(out.lo->get(), out.lo->get(), static_cast<long>(p), MPFR_RNDD);
    mpfr_div_si(out.hi->get(), out.hi->get(), static_cast<long>(p), MPFR_RNDU);
    return out;
  }

  const Instance* inst_;
  Rat q_;
};

Outcome run_order(const Instance& inst, const LineOrder& order) {
  if (order.zero_at_origin() && inst.house() < static_cast<std::int64_t>(inst.size()))
    throw Error(ErrorKind::EmptyOutcome, "signpost s(0) = 0 gives every state a seat, but H < n");
  const auto q = quotas(inst);
  Seats guess(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) guess[i] = to_int64((q[i] + Rat(1, 2)).floor());
  auto sel = detail::select_lines(inst, order, inst.house(), inst.house(), std::move(guess));
  return detail::outcome_from_selection(inst, order, sel);
}

}  // namespace

Outcome apportion_power_mean(const Instance& inst, const PowerMeanParam& q) {
  if (q.kind() == PowerMeanParam::Kind::NegInf) return apportion_stationary(inst, Rat(0));
  if (q.kind() == PowerMeanParam::Kind::PosInf) return apportion_stationary(inst, Rat(1));
  const Rat& v = q.value();
  if (v == Rat(1)) return apportion_stationary(inst, Rat(1, 2));
  if (v == Rat(-1)) return run_order(inst, HarmonicOrder(inst));
  if (v.sign() == 0) return run_order(inst, GeometricOrder(inst));
  return run_order(inst, GeneralOrder(inst, v));
}

namespace {

// The extended line is parameterized by u in [-1,1] with q = u / (1 - |u|).
PowerMeanParam from_u(const Rat& u) {
  if (u == Rat(-1)) return PowerMeanParam::neg_inf();
  if (u == Rat(1)) return PowerMeanParam::pos_inf();
  return PowerMeanParam(u / (Rat(1) - abs(u)));
}

Rat to_u(const PowerMeanParam& q) {
  if (q.kind() == PowerMeanParam::Kind::NegInf) return Rat(-1);
  if (q.kind() == PowerMeanParam::Kind::PosInf) return Rat(1);
  return q.value() / (Rat(1) + abs(q.value()));
}

bool narrow(const PowerMeanParam& a, const PowerMeanParam& b, const Rat& tol) {
  return a.finite() && b.finite() && b.value() - a.value() <= tol;
}

struct Sample {
  Rat u;
  Outcome outcome;
};

constexpr int kMaxDepth = 200;
// Signposts at larger |q| overflow the floating exponent range.
const Rat kMaxAbsQ(1L << 20);

}  // namespace

std::vector<PowerMeanSegment> power_mean_breakpoints(const Instance& inst, const PowerMeanParam& q_lo,
                                                     const PowerMeanParam& q_hi, const Rat& tol) {
  if (!(q_lo < q_hi)) throw Error(ErrorKind::InvalidArgument, "q_lo must be below q_hi");
  if (tol.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");

  // Seats move from smaller to larger states as q grows, so equal outcomes at
  // both ends of a bracket certify a constant outcome inside it.
  std::vector<Sample> samples;
  struct Frame {
    Rat a, b;
    int depth;
  };
  Outcome oa = apportion_power_mean(inst, q_lo);
  Outcome ob = apportion_power_mean(inst, q_hi);
  samples.push_back({to_u(q_lo), oa});
  std::vector<std::pair<Frame, std::pair<Outcome, Outcome>>> stack;
  std::vector<Sample> interior;
  stack.push_back({{to_u(q_lo), to_u(q_hi), 0}, {oa, ob}});
  while (!stack.empty()) {
    auto [frame, ends] = std::move(stack.back());
    stack.pop_back();
    if (ends.first == ends.second) continue;
    if (narrow(from_u(frame.a), from_u(frame.b), tol) || frame.depth >= kMaxDepth) continue;
    Rat mid = (frame.a + frame.b) / Rat(2);
    PowerMeanParam qm = from_u(mid);
    if (qm.finite() && abs(qm.value()) > kMaxAbsQ) continue;
    Outcome om = apportion_power_mean(inst, qm);
    interior.push_back({mid, om});
    stack.push_back({{mid, frame.b, frame.depth + 1}, {om, ends.second}});
    stack.push_back({{frame.a, mid, frame.depth + 1}, {ends.first, om}});
  }
  std::sort(interior.begin(), interior.end(), [](const Sample& x, const Sample& y) { return x.u < y.u; });
  for (auto& s : interior) samples.push_back(std::move(s));
  samples.push_back({to_u(q_hi), ob});

  std::vector<PowerMeanSegment> segments;
  for (const auto& s : samples) {
    if (!segments.empty() && segments.back().outcome == s.outcome) {
      segments.back().hi = from_u(s.u);
      continue;
    }
    if (!segments.empty()) segments.back().widened = !narrow(segments.back().hi, from_u(s.u), tol);
    segments.push_back({from_u(s.u), from_u(s.u), s.outcome, false});
  }
  return segments;
}

}  // namespace apportion
