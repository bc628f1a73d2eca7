#include <algorithm>
#include <cmath>

#include "apportion/core.hpp"
#include "selection.hpp"

namespace apportion {

namespace detail {

namespace {
std::size_t bit_length(std::uint64_t v) { return v == 0 ? 0 : 64 - static_cast<std::size_t>(__builtin_clzll(v)); }
}  // namespace

StationaryOrder::StationaryOrder(const Instance& inst, const Rat& delta)
    : inst_(&inst), a_(delta.num()), b_(delta.den()), zero_(delta.sign() == 0) {
  if (mpz_fits_slong_p(a_.get_mpz_t()) && mpz_fits_slong_p(b_.get_mpz_t()) && a_ >= 0) {
    auto pmax = *std::max_element(inst.populations().begin(), inst.populations().end());
    std::size_t bits = bit_length(static_cast<std::uint64_t>(inst.house()) + 2) +
                       bit_length(static_cast<std::uint64_t>(b_.get_si())) + 1 +
                       bit_length(static_cast<std::uint64_t>(pmax));
    if (bits < 125) {
      fast_ = true;
      a128_ = a_.get_si();
      b128_ = b_.get_si();
    }
  }
}

int StationaryOrder::compare(std::size_t i, std::int64_t t, std::size_t j, std::int64_t u) const {
  const std::int64_t pi = inst_->population(i), pj = inst_->population(j);
  if (fast_) {
    __int128 lhs = (t * b128_ + a128_) * pj;
    __int128 rhs = (u * b128_ + a128_) * pi;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  BigInt lhs = (BigInt(static_cast<long>(t)) * b_ + a_) * static_cast<long>(pj);
  BigInt rhs = (BigInt(static_cast<long>(u)) * b_ + a_) * static_cast<long>(pi);
  return cmp(lhs, rhs);
}

Seats stationary_guess(const Instance& inst, const Rat& delta, std::int64_t rank) {
  const double d = delta.to_double();
  const double scale = static_cast<double>(rank) / static_cast<double>(inst.total());
  Seats g(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    double v = std::floor(scale * static_cast<double>(inst.population(i)) - d) + 1.0;
    g[i] = static_cast<std::int64_t>(std::clamp(v, 0.0, static_cast<double>(inst.house())));
  }
  return g;
}

}  // namespace detail

namespace {

void require_delta(const Rat& delta) {
  if (delta.sign() < 0 || delta > Rat(1))
    throw Error(ErrorKind::InvalidDelta, "delta " + delta.str() + " is outside [0,1]");
}

Rat line_value(const Instance& inst, const Rat& delta, const detail::LineId& id) {
  return (Rat(static_cast<long>(id.offset)) + delta) / Rat(static_cast<long>(inst.population(id.state)));
}

}  // namespace

Outcome apportion_stationary(const Instance& inst, const Rat& delta) {
  require_delta(delta);
  if (delta.sign() == 0 && inst.house() < static_cast<std::int64_t>(inst.size()))
    throw Error(ErrorKind::EmptyOutcome, "Adams rounding gives every state a seat, but H < n");
  detail::StationaryOrder order(inst, delta);
  auto sel = detail::select_lines(inst, order, inst.house(), inst.house(),
                                  detail::stationary_guess(inst, delta, inst.house()));
  return detail::outcome_from_selection(inst, order, sel);
}

Rat lambda_level(const Instance& inst, const Rat& delta, std::int64_t k) {
  require_delta(delta);
  const auto lines = static_cast<std::int64_t>(inst.size()) * inst.house();
  if (k < 1 || k > lines)
    throw Error(ErrorKind::InvalidArgument, "rank " + std::to_string(k) + " outside 1.." + std::to_string(lines));
  detail::StationaryOrder order(inst, delta);
  auto sel = detail::select_lines(inst, order, k, inst.house(), detail::stationary_guess(inst, delta, k));
  return line_value(inst, delta, sel.kth);
}

std::pair<Rat, Rat> multiplier_interval(const Instance& inst, const Rat& delta) {
  require_delta(delta);
  if (delta.sign() == 0 && inst.house() < static_cast<std::int64_t>(inst.size()))
    throw Error(ErrorKind::EmptyOutcome, "Adams rounding gives every state a seat, but H < n");
  detail::StationaryOrder order(inst, delta);
  // Offsets up to H are allowed so that lambda_{H+1} exists for n = 1.
  auto sel = detail::select_lines(inst, order, inst.house(), inst.house(),
                                  detail::stationary_guess(inst, delta, inst.house()));
  return {line_value(inst, delta, sel.kth), line_value(inst, delta, sel.next)};
}

}  // namespace apportion
