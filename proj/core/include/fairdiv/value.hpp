#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fairdiv {

/// Exact rational number. All item values, shares and lottery probabilities
/// are Values; nothing on a decision path uses floating point.
class Value {
 public:
  Value() = default;

  template <std::integral T>
  Value(T v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      q_ = static_cast<long>(v);
    } else {
      q_ = static_cast<unsigned long>(v);
    }
  }

  Value(long num, long den);
  explicit Value(mpq_class q);

  /// Accepts "7", "-3", "p/q" and finite decimals such as "0.25".
  /// Throws InputError on anything else, including a zero denominator.
  static Value parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  /// Largest integer not above the value.
  mpz_class floor() const;
  /// Smallest integer not below the value.
  mpz_class ceil() const;

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  Value& operator+=(const Value& o);
  Value& operator-=(const Value& o);
  Value& operator*=(const Value& o);
  Value& operator/=(const Value& o);
  Value operator-() const;

  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  friend Value operator*(Value a, const Value& b) { return a *= b; }
  friend Value operator/(Value a, const Value& b) { return a /= b; }

  friend bool operator==(const Value& a, const Value& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    return cmp(a.q_, b.q_) <=> 0;
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

}  // namespace fairdiv
