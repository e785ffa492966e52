#include "rftt/rational.h"

#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rftt {

namespace {

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) {
    throw std::overflow_error("rational component exceeds 64 bits");
  }
  return z.get_si();
}

} // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw std::domain_error("zero denominator");
  }
  value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  value_.canonicalize();
}

Rational Rational::from_strings(const std::string& num, const std::string& den) {
  mpz_class n(num), d(den);
  if (d == 0) {
    throw std::domain_error("zero denominator");
  }
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::num_str() const { return value_.get_num().get_str(); }
std::string Rational::den_str() const { return value_.get_den().get_str(); }

std::string Rational::to_string() const {
  if (is_integer()) {
    return num_str();
  }
  return num_str() + "/" + den_str();
}

std::string Rational::to_decimal(int places) const {
  // Round half away from zero on the scaled value.
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) {
    scale *= 10;
  }
  mpz_class num = value_.get_num() * scale;
  const mpz_class& den = value_.get_den();
  const bool neg = num < 0;
  if (neg) {
    num = -num;
  }
  mpz_class q = (2 * num + den) / (2 * den);
  mpz_class ip = q / scale;
  mpz_class fp = q % scale;
  std::ostringstream os;
  if (neg && q != 0) {
    os << '-';
  }
  os << ip.get_str();
  if (places > 0) {
    std::string f = fp.get_str();
    os << '.' << std::string(places - f.size(), '0') << f;
  }
  return os.str();
}

double Rational::to_double() const { return value_.get_d(); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

std::int64_t Rational::num_i64() const { return to_i64(value_.get_num()); }
std::int64_t Rational::den_i64() const { return to_i64(value_.get_den()); }

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) {
    throw std::domain_error("division by zero");
  }
  value_ /= o.value_;
  return *this;
}

Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

std::int64_t common_denominator(const Rational* first, const Rational* last) {
  mpz_class l = 1;
  for (; first != last; ++first) {
    mpz_class d(first->den_str());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return to_i64(l);
}

} // namespace rftt
