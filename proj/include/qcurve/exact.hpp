// Exact rational scalar on top of boost::multiprecision::cpp_rational.
// Values are kept in lowest terms with a positive denominator.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>

namespace qcurve {

using BigInt = boost::multiprecision::cpp_int;

class ExactScalar {
 public:
  using Rational = boost::multiprecision::cpp_rational;

  ExactScalar() = default;
  ExactScalar(long long value);  // NOLINT(google-explicit-constructor)
  ExactScalar(const BigInt& num, const BigInt& den);
  explicit ExactScalar(const Rational& r) : value_(r) {}

  // Exact value of a finite double (every binary64 is a dyadic rational).
  static ExactScalar from_double(double x);

  BigInt numerator() const;
  BigInt denominator() const;
  double to_double() const;
  std::string to_string() const;
  const Rational& raw() const { return value_; }

  bool is_zero() const { return value_ == 0; }
  int sign() const;
  ExactScalar abs() const;

  ExactScalar& operator+=(const ExactScalar& o) { value_ += o.value_; return *this; }
  ExactScalar& operator-=(const ExactScalar& o) { value_ -= o.value_; return *this; }
  ExactScalar& operator*=(const ExactScalar& o) { value_ *= o.value_; return *this; }
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  ExactScalar operator-() const { return ExactScalar(Rational(-value_)); }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b);

 private:
  Rational value_{0};
};

ExactScalar pow(const ExactScalar& base, unsigned exponent);

}  // namespace qcurve
