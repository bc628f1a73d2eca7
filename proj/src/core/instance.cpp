#include "apportion/instance.hpp"

#include <limits>
#include <string>

#include "apportion/error.hpp"

namespace apportion {

namespace {
// Keeps p_i * H and t * P style products inside 64 bits for the flow code.
constexpr std::int64_t kMaxTotal = std::int64_t{1} << 40;
}

Instance::Instance(std::vector<std::int64_t> populations, std::int64_t house)
    : populations_(std::move(populations)), house_(house), total_(0) {
  if (populations_.empty()) throw Error(ErrorKind::InvalidArgument, "instance needs at least one state");
  if (house_ < 1) throw Error(ErrorKind::InvalidArgument, "house size must be at least 1");
  if (house_ > kMaxTotal) throw Error(ErrorKind::InvalidArgument, "house size too large");
  for (std::size_t i = 0; i < populations_.size(); ++i) {
    if (populations_[i] < 1)
      throw Error(ErrorKind::InvalidArgument, "population of state " + std::to_string(i) + " must be positive");
    if (populations_[i] > kMaxTotal - total_) throw Error(ErrorKind::InvalidArgument, "total population too large");
    total_ += populations_[i];
  }
}

Instance Instance::with_house(std::int64_t house) const { return Instance(populations_, house); }

std::vector<Rat> quotas(const Instance& inst) {
  std::vector<Rat> q;
  q.reserve(inst.size());
  for (auto p : inst.populations()) q.emplace_back(BigInt(static_cast<long>(p)) * inst.house(), BigInt(static_cast<long>(inst.total())));
  return q;
}

}  // namespace apportion
