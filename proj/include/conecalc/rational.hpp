#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "conecalc/errors.hpp"

namespace conecalc {

// Exact rational number backed by GMP, always canonicalized.
// Text form everywhere in this project is "p" (denominator 1) or "p/q", q > 0.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long long value) : v_(static_cast<long>(value)) {}  // NOLINT: implicit by design
  Rat(long long num, long long den) {
    if (den == 0) throw Error(Errc::bad_input, "rational with zero denominator");
    v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
    v_.canonicalize();
  }
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  static Rat parse(std::string_view text);
  static std::optional<Rat> try_parse(std::string_view text);

  std::string str() const;

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rat abs() const { return Rat(mpq_class(::abs(v_))); }

  // floor/ceil as arbitrary-precision integers, returned as Rat
  Rat floor() const;
  Rat ceil() const;
  // floor/ceil as machine integers; enumeration windows stay tiny, overflow throws
  long long floor_ll() const;
  long long ceil_ll() const;

  const mpq_class& raw() const { return v_; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw Error(Errc::bad_input, "division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
  }
  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) >= 0; }

 private:
  mpq_class v_;
};

Rat pow2(int k);  // 2^k for k >= 0

}  // namespace conecalc
