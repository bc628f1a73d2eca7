#include "apportion/outcome.hpp"

#include <algorithm>
#include <numeric>

#include "apportion/error.hpp"

namespace apportion {

Outcome::Outcome(Seats base, std::vector<std::size_t> tied, std::int64_t extra)
    : base_(std::move(base)), tied_(std::move(tied)), extra_(extra) {
  std::sort(tied_.begin(), tied_.end());
  if (std::adjacent_find(tied_.begin(), tied_.end()) != tied_.end())
    throw Error(ErrorKind::Internal, "duplicate tied state");
  for (auto i : tied_)
    if (i >= base_.size()) throw Error(ErrorKind::Internal, "tied state out of range");
  if (extra_ < 0 || extra_ > static_cast<std::int64_t>(tied_.size()))
    throw Error(ErrorKind::Internal, "extra seats out of range");
  if (extra_ == static_cast<std::int64_t>(tied_.size())) {
    for (auto i : tied_) base_[i] += 1;
    tied_.clear();
    extra_ = 0;
  } else if (extra_ == 0) {
    tied_.clear();
  }
}

std::int64_t Outcome::house() const {
  return std::accumulate(base_.begin(), base_.end(), std::int64_t{0}) + extra_;
}

bool Outcome::is_tied(std::size_t i) const { return std::binary_search(tied_.begin(), tied_.end(), i); }

BigInt Outcome::expansion_size() const {
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), tied_.size(), static_cast<unsigned long>(extra_));
  return c;
}

bool Outcome::contains(const Seats& x) const {
  if (x.size() != base_.size()) return false;
  std::int64_t ups = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::int64_t d = x[i] - base_[i];
    if (d == 0) continue;
    if (d != 1 || !is_tied(i)) return false;
    ++ups;
  }
  return ups == extra_;
}

Seats Outcome::lex_max() const {
  Seats x = base_;
  for (std::int64_t k = 0; k < extra_; ++k) x[tied_[k]] += 1;
  return x;
}

Seats Outcome::lex_min() const {
  Seats x = base_;
  for (std::int64_t k = 0; k < extra_; ++k) x[tied_[tied_.size() - 1 - k]] += 1;
  return x;
}

std::vector<Rat> Outcome::mean() const {
  std::vector<Rat> m(base_.begin(), base_.end());
  if (!tied_.empty()) {
    Rat share(BigInt(static_cast<long>(extra_)), BigInt(static_cast<unsigned long>(tied_.size())));
    for (auto i : tied_) m[i] += share;
  }
  return m;
}

ExpansionIterator::ExpansionIterator(const Outcome& outcome) : outcome_(&outcome) {}

bool ExpansionIterator::next(Seats& out) {
  if (done_) return false;
  const auto k = static_cast<std::size_t>(outcome_->extra());
  const auto m = outcome_->tied().size();
  if (!started_) {
    started_ = true;
    choice_.resize(k);
    std::iota(choice_.begin(), choice_.end(), std::size_t{0});
  } else {
    // Advance the k-combination of {0..m-1} in lexicographic order.
    std::size_t j = k;
    while (j > 0 && choice_[j - 1] == m - k + (j - 1)) --j;
    if (j == 0) {
      done_ = true;
      return false;
    }
    ++choice_[j - 1];
    for (std::size_t l = j; l < k; ++l) choice_[l] = choice_[l - 1] + 1;
  }
  out = outcome_->base();
  for (auto c : choice_) out[outcome_->tied()[c]] += 1;
  if (k == 0) done_ = true;
  return true;
}

std::vector<Seats> expand(const Outcome& outcome, std::size_t cap) {
  if (outcome.expansion_size() > cap)
    throw Error(ErrorKind::ResourceCap, "expansion has " + outcome.expansion_size().get_str() + " vectors");
  std::vector<Seats> all;
  ExpansionIterator it(outcome);
  Seats x;
  while (it.next(x)) all.push_back(x);
  return all;
}

}  // namespace apportion
