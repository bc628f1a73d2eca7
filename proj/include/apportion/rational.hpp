#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace apportion {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(int value) : v_(value) {}
  Rat(long value) : v_(value) {}
  Rat(long long value) : v_(static_cast<long>(value)) {
    static_assert(sizeof(long) == sizeof(long long), "LP64 expected");
  }
  Rat(unsigned long value) : v_(value) {}
  Rat(const BigInt& value) : v_(value) {}
  Rat(const BigInt& num, const BigInt& den);
  explicit Rat(const mpq_class& value) : v_(value) { v_.canonicalize(); }

  /// Parses "a", "a/b" or "-a/b". Throws Error(Parse) on malformed input.
  static Rat parse(std::string_view text);

  /// Canonical "num/den" form, e.g. "13/2" or "3/1".
  std::string str() const;

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  BigInt floor() const;
  BigInt ceil() const;
  Rat frac() const { return *this - Rat(floor()); }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Rat abs(const Rat& r);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);
std::ostream& operator<<(std::ostream& os, const Rat& r);

/// Converts a BigInt to int64, throwing Error(InvalidArgument) on overflow.
std::int64_t to_int64(const BigInt& v);

}  // namespace apportion
