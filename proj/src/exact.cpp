#include "qcurve/exact.hpp"

#include "qcurve/error.hpp"

#include <cmath>
#include <sstream>

namespace qcurve {

ExactScalar::ExactScalar(long long value) : value_(value) {}

ExactScalar::ExactScalar(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("ExactScalar: zero denominator");
  if (den < 0) value_ = Rational(BigInt(-num), BigInt(-den));
  else value_ = Rational(num, den);
}

ExactScalar ExactScalar::from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("ExactScalar::from_double: non-finite input");
  int e = 0;
  double mant = std::frexp(x, &e);
  // 53 bits of mantissa fit in an int64 after scaling
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  e -= 53;
  BigInt num = scaled;
  BigInt den = 1;
  if (e >= 0) num <<= e;
  else den <<= -e;
  return ExactScalar(num, den);
}

BigInt ExactScalar::numerator() const { return boost::multiprecision::numerator(value_); }
BigInt ExactScalar::denominator() const { return boost::multiprecision::denominator(value_); }

double ExactScalar::to_double() const { return value_.convert_to<double>(); }

std::string ExactScalar::to_string() const {
  std::ostringstream os;
  os << numerator();
  if (denominator() != 1) os << '/' << denominator();
  return os.str();
}

int ExactScalar::sign() const { return value_ > 0 ? 1 : (value_ < 0 ? -1 : 0); }

ExactScalar ExactScalar::abs() const { return sign() < 0 ? -*this : *this; }

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_zero()) throw DomainError("ExactScalar: division by zero");
  value_ /= o.value_;
  return *this;
}

std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactScalar pow(const ExactScalar& base, unsigned exponent) {
  ExactScalar result(1);
  ExactScalar b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

}  // namespace qcurve
