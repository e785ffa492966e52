#ifndef RFTT_RATIONAL_H
#define RFTT_RATIONAL_H

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace rftt {

// Exact rational number, always kept in lowest terms with a positive
// denominator. All weights and objective values go through this type.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value);
  Rational(std::int64_t num, std::int64_t den);

  static Rational from_strings(const std::string& num, const std::string& den);

  std::string num_str() const;
  std::string den_str() const;
  std::string to_string() const;
  // Fixed-point rendering, display only.
  std::string to_decimal(int places) const;
  double to_double() const;

  bool is_integer() const;
  bool is_negative() const { return sgn(value_) < 0; }
  bool is_zero() const { return sgn(value_) == 0; }

  // Both parts must fit in int64; throws std::overflow_error otherwise.
  std::int64_t num_i64() const;
  std::int64_t den_i64() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

private:
  explicit Rational(mpq_class v) : value_(std::move(v)) {}
  mpq_class value_{0};
};

Rational max(const Rational& a, const Rational& b);
Rational min(const Rational& a, const Rational& b);

// Least common multiple of the denominators of the given values, as int64.
std::int64_t common_denominator(const Rational* first, const Rational* last);

} // namespace rftt

#endif
