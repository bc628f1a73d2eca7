#pragma once

#include <stdexcept>
#include <string>

namespace apportion {

enum class ErrorKind {
  InvalidArgument,
  InvalidDelta,
  EmptyOutcome,
  DimensionMismatch,
  Parse,
  InvalidDistribution,
  UnsupportedTieBreak,
  DegenerateArrangement,
  ResourceCap,
  Internal,
};

const char* error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace apportion
