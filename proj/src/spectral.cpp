#include "qcurve/spectral.hpp"

#include "qcurve/error.hpp"

#include <algorithm>
#include <cmath>

namespace qcurve {

BigInt spherical_multiplicity(int n, int j) {
  if (n < 3) throw DomainError("spherical_multiplicity: n >= 3 required");
  if (j < 0) throw DomainError("spherical_multiplicity: j >= 0 required");
  // (j+n-3)!/((n-2)! j!) * (2j+n-2), built as a binomial to stay integral
  BigInt num = 2 * j + n - 2;
  BigInt fact = 1;  // (j+n-3)! / (n-3)!
  for (int i = n - 2; i <= j + n - 3; ++i) fact *= i;
  BigInt jfact = 1;
  for (int i = 2; i <= j; ++i) jfact *= i;
  BigInt result = num * fact;
  // divide by (n-2) j!; the (n-3)! already cancelled
  BigInt den = BigInt(n - 2) * jfact;
  if (result % den != 0) throw InternalError("spherical_multiplicity: non-integral result");
  return result / den;
}

SpectralPolynomial::SpectralPolynomial(const Dims& dims) : dims_(dims), coeffs_{ExactScalar(1)} {
  for (int l = 1; l <= dims.k(); ++l) {
    ExactScalar s = dims.shift(l);
    ExactScalar s2 = s * s;
    std::vector<ExactScalar> next(coeffs_.size() + 1, ExactScalar(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      next[i] += coeffs_[i] * s2;
      next[i + 1] += coeffs_[i];
    }
    coeffs_ = std::move(next);
  }
}

ExactScalar SpectralPolynomial::kernel_target() const { return dims_.kernel_ratio() * constant_term(); }

ExactScalar SpectralPolynomial::evaluate(const ExactScalar& y) const {
  ExactScalar acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

ExactScalar SpectralPolynomial::evaluate_factored(const ExactScalar& y) const {
  ExactScalar acc(1);
  for (int l = 1; l <= dims_.k(); ++l) {
    ExactScalar s = dims_.shift(l);
    acc *= y + s * s;
  }
  return acc;
}

double SpectralPolynomial::evaluate(double y) const {
  double acc = 1.0;
  for (int l = 1; l <= dims_.k(); ++l) {
    double s = 0.5 * dims_.n() + dims_.k() - 2.0 * l;
    acc *= y + s * s;
  }
  return acc;
}

SpectralPolynomial build_spectral_polynomial(const Dims& dims) { return SpectralPolynomial(dims); }

double alpha(const Dims& dims, ModeIndex mode, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("alpha: tau must be positive and finite");
  if (mode.m < 0 || mode.j < 0) throw DomainError("alpha: mode indices must be nonnegative");
  const double y = static_cast<double>(mode.m) * mode.m / (tau * tau);
  double acc = 1.0;
  for (int l = 1; l <= dims.k(); ++l) {
    double s = mode.j + 0.5 * dims.n() + dims.k() - 2.0 * l;
    acc *= y + s * s;
  }
  return acc;
}

namespace {

double exact_residual(const SpectralPolynomial& poly, const ExactScalar& target, double y) {
  ExactScalar val = poly.evaluate(ExactScalar::from_double(y));
  return ((val - target).abs() / target).to_double();
}

}  // namespace

Tau0Result solve_tau0(const Dims& dims, double tol) {
  if (!(tol > 0.0) || tol > 1e-6) throw DomainError("solve_tau0: tol must lie in (0, 1e-6]");
  const SpectralPolynomial poly(dims);
  const ExactScalar targetExact = poly.kernel_target();
  const double target = targetExact.to_double();
  const int n = dims.n(), k = dims.k();

  double lo = n - 2 * k;
  double hi = n + 2 * k - 4;
  if (k == 1) {
    // bracket collapses: P_1(y) = y + (n/2-1)^2 hits n/(n-2) (n/2-1)^2 at y = n-2
    double y = lo;
    return {dims, y, 1.0 / std::sqrt(y), exact_residual(poly, targetExact, y)};
  }
  if (!(poly.evaluate(ExactScalar(lo)) <= targetExact && targetExact <= poly.evaluate(ExactScalar(hi))))
    throw InternalError("solve_tau0: bracket does not straddle the target for " + dims.label());

  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 2000; ++it) {
    y = 0.5 * (lo + hi);
    const double val = poly.evaluate(y);
    if (std::abs(val - target) <= tol * target) break;
    if (y <= lo || y >= hi) break;  // bracket exhausted at binary64 resolution
    (val < target ? lo : hi) = y;
  }
  const double res = exact_residual(poly, targetExact, y);
  if (res > 1e-13)
    throw AccuracyError("solve_tau0: residual " + std::to_string(res) + " exceeds 1e-13 for " + dims.label());
  return {dims, y, 1.0 / std::sqrt(y), res};
}

Tau0Certificate certify_tau0(const Dims& dims, const ExactScalar& width) {
  if (width.sign() <= 0) throw DomainError("certify_tau0: width must be positive");
  const SpectralPolynomial poly(dims);
  const ExactScalar target = poly.kernel_target();
  ExactScalar lo(dims.n() - 2 * dims.k());
  ExactScalar hi(dims.n() + 2 * dims.k() - 4);
  if (hi < lo) hi = lo;
  if (!(poly.evaluate(lo) <= target && target <= poly.evaluate(hi)))
    throw InternalError("certify_tau0: bracket does not straddle the target for " + dims.label());
  int iterations = 0;
  const ExactScalar half(1, 2);
  while (hi - lo > width) {
    ExactScalar mid = (lo + hi) * half;
    if (poly.evaluate(mid) <= target) lo = mid;
    else hi = mid;
    ++iterations;
  }
  return {lo, hi, iterations};
}

Tau0Bounds tau0_bounds_check(const Dims& dims, double slack) {
  const Tau0Result r = solve_tau0(dims);
  const double lower = 1.0 / std::sqrt(static_cast<double>(dims.n() + 2 * dims.k() - 4));
  const double upper = 1.0 / std::sqrt(static_cast<double>(dims.n() - 2 * dims.k()));
  const bool holds = lower - slack <= r.tau0 && r.tau0 <= upper + slack;
  return {lower, upper, r.tau0, holds};
}

EigenvalueGapReport eigenvalue_gap_report(const Dims& dims, int mMax, int jMax) {
  if (mMax < 2 || jMax < 2) throw DomainError("eigenvalue_gap_report: mMax, jMax >= 2 required");
  const SpectralPolynomial poly(dims);
  const double tau0 = solve_tau0(dims).tau0;
  const double kernel = poly.kernel_target().to_double();

  EigenvalueGapReport rep{dims, tau0, kernel, 0.0, {}, true, true, true, 0.0};
  rep.table.reserve(static_cast<std::size_t>((mMax + 1) * (jMax + 1)));
  std::vector<double> grid(static_cast<std::size_t>((mMax + 1) * (jMax + 1)));
  auto at = [&](int m, int j) -> double& { return grid[static_cast<std::size_t>(m * (jMax + 1) + j)]; };
  for (int m = 0; m <= mMax; ++m)
    for (int j = 0; j <= jMax; ++j) {
      at(m, j) = alpha(dims, {m, j}, tau0);
      rep.table.push_back({{m, j}, at(m, j)});
    }
  for (int m = 0; m <= mMax; ++m)
    for (int j = 0; j <= jMax; ++j) {
      if (m > 0 && !(at(m, j) > at(m - 1, j))) rep.increasingInM = false;
      if (j > 0 && !(at(m, j) > at(m, j - 1))) rep.increasingInJ = false;
      if (!(m == 1 && j == 0) && std::abs(at(m, j) - kernel) <= 1e-12 * kernel) rep.kernelUnique = false;
    }
  rep.kernelRelativeError = std::abs(at(1, 0) - kernel) / kernel;
  rep.alpha01OverAlpha10 = at(0, 1) / at(1, 0);
  std::stable_sort(rep.table.begin(), rep.table.end(),
                   [](const EigenEntry& a, const EigenEntry& b) { return a.value < b.value; });
  return rep;
}

double coercivity_constant(const Dims& dims, int cap) {
  const double tau0 = solve_tau0(dims).tau0;
  double best = INFINITY;
  for (int m = 0; m <= cap; ++m)
    for (int j = 0; j <= cap; ++j) {
      double denom = 1.0 + std::pow(m, 2 * dims.k()) + std::pow(j, 2 * dims.k());
      best = std::min(best, alpha(dims, {m, j}, tau0) / denom);
    }
  return best;
}

}  // namespace qcurve
