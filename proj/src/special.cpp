#include "qcurve/special.hpp"

#include "qcurve/error.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

namespace qcurve {

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: positive argument required");
  return boost::math::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: positive argument required");
  return boost::math::digamma(x);
}

double log_gamma_ratio(double x, double s) {
  if (!(x > 0.0) || !(x + s > 0.0)) throw DomainError("log_gamma_ratio: arguments must be positive");
  const double r = std::round(s);
  if (r == s && std::abs(s) <= 64) {
    double acc = 0.0;
    if (s >= 0)
      for (int i = 0; i < static_cast<int>(s); ++i) acc += std::log(x + i);
    else
      for (int i = 1; i <= static_cast<int>(-s); ++i) acc -= std::log(x - i);
    return acc;
  }
  return log_gamma(x + s) - log_gamma(x);
}

double log_sphere_volume(int d) {
  if (d < 0) throw DomainError("sphere_volume: dimension must be nonnegative");
  const double h = 0.5 * (d + 1);
  return std::log(2.0) + h * std::log(std::numbers::pi) - log_gamma(h);
}

double sphere_volume(int d) { return std::exp(log_sphere_volume(d)); }

double log_sobolev_sharp(int n, int k) {
  if (n <= 2 * k || k < 1) throw DomainError("sobolev_sharp: n > 2k >= 2 required");
  return (2.0 * k / n) * log_sphere_volume(n) + log_gamma_ratio(0.5 * (n - 2 * k), 2.0 * k);
}

double sobolev_sharp(int n, int k) { return std::exp(log_sobolev_sharp(n, k)); }

}  // namespace qcurve
