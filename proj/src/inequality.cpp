#include "qcurve/inequality.hpp"

#include "qcurve/error.hpp"
#include "qcurve/qfunctional.hpp"
#include "qcurve/special.hpp"
#include "qcurve/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qcurve {

namespace {

constexpr double kEqualityTol = 1e-10;

double log_p0(double n, int k) {
  double acc = 0.0;
  for (int l = 1; l <= k; ++l) acc += 2.0 * std::log(0.5 * n + k - 2.0 * l);
  return acc;
}

}  // namespace

InequalityVerdict make_verdict(std::string name, std::map<std::string, double> parameters, double lhs, double rhs) {
  InequalityVerdict v;
  v.name = std::move(name);
  v.parameters = std::move(parameters);
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = rhs - lhs;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  v.holds = v.margin > -kEqualityTol * scale;
  v.equalityCase = std::abs(v.margin) <= kEqualityTol * scale;
  return v;
}

double log_psi_k(double n, int k, double exponent) {
  if (!(n > 2.0 * k)) throw DomainError("log_psi_k: n > 2k required");
  return exponent * (log_p0(n, k) - log_gamma_ratio(0.5 * n - k, 2.0 * k));
}

double log_psi_k(double n, int k) { return log_psi_k(n, k, 0.5 * n); }

double log_phi_k(double n, int k) {
  if (!(n > 2.0 * k)) throw DomainError("log_phi_k: n > 2k required");
  return 0.5 * std::log(n - 2.0 * k) - std::log(2.0 * std::sqrt(std::numbers::pi)) +
         log_gamma(0.5 * n) - log_gamma(0.5 * (n + 1));
}

StrictBindingReport strict_binding(const Dims& dims) {
  const int n = dims.n(), k = dims.k();
  const std::map<std::string, double> params{{"n", n}, {"k", k}};
  const auto geo = GeometryConstants::critical(dims);
  const double pref = 2.0 / (n - 2 * k);
  StrictBindingReport r;
  r.quotient = make_verdict("strict_binding_quotient", params, geo.yamabe, pref * geo.sobolevSharp);
  r.reduced = make_verdict("strict_binding_reduced", params, std::exp(log_psi_k(n, k)), std::exp(log_phi_k(n, k)));
  r.literal = make_verdict("strict_binding_literal", params, geo.yamabe, geo.sobolevSharp);
  r.reducedExponent = make_verdict("strict_binding_reduced_exponent_n_over_2k", params,
                                   std::exp(log_psi_k(n, k, 0.5 * n / k)), std::exp(log_phi_k(n, k)));
  return r;
}

namespace {

double log_beckner_phi(const Dims& dims, double ell) {
  const double n = dims.n(), k = dims.k();
  const double a = (n - 2 * k) / (2 * n), b = (n + 2 * k) / (2 * n);
  return log_gamma_ratio(b, ell) - log_gamma_ratio(a, ell);
}

double lambda_ratio(const Dims& dims, double y0, double ell) {
  double acc = 1.0;
  for (int l = 1; l <= dims.k(); ++l) {
    const double s = 0.5 * dims.n() + dims.k() - 2.0 * l;
    acc *= (y0 * ell * ell + s * s) / (s * s);
  }
  return acc;
}

}  // namespace

InequalityVerdict beckner_gap(const Dims& dims, int ell) {
  if (ell < 0) throw DomainError("beckner_gap: l >= 0 required");
  const double y0 = solve_tau0(dims).y;
  return make_verdict("beckner_gap", {{"n", dims.n()}, {"k", dims.k()}, {"l", ell}},
                      std::exp(log_beckner_phi(dims, ell)), lambda_ratio(dims, y0, ell));
}

InequalityVerdict beckner_derivative_step(const Dims& dims, double ell) {
  if (!(ell > 0.0)) throw DomainError("beckner_derivative_step: l > 0 required");
  const double h = 1e-4 * std::max(1.0, ell);
  // non-integer arguments, so both evaluations go through log-Gamma differences
  const double d = (log_beckner_phi(dims, ell + h) - log_beckner_phi(dims, ell - h)) / (2.0 * h);
  return make_verdict("beckner_derivative_step", {{"n", dims.n()}, {"k", dims.k()}, {"l", ell}}, d,
                      2.0 * dims.k() / (dims.n() * ell));
}

InequalityVerdict lambda_derivative_step(const Dims& dims, double ell) {
  if (!(ell > 0.0)) throw DomainError("lambda_derivative_step: l > 0 required");
  const double y0 = solve_tau0(dims).y;
  double dlog = 0.0;
  for (int l = 1; l <= dims.k(); ++l) {
    const double s = 0.5 * dims.n() + dims.k() - 2.0 * l;
    dlog += 2.0 * y0 * ell / (y0 * ell * ell + s * s);
  }
  return make_verdict("lambda_derivative_step", {{"n", dims.n()}, {"k", dims.k()}, {"l", ell}},
                      2.0 * dims.k() / (dims.n() * ell), dlog);
}

QuarticConstant quartic_constant_c(const Dims& dims) {
  const auto geo = GeometryConstants::critical(dims);
  const double p = dims.two_star();
  const double a10 = alpha(dims, {1, 0}, geo.tau0);
  const double a20 = alpha(dims, {2, 0}, geo.tau0);
  const double K = (p + 1.0) - a10 / (a20 - a10) * (p - 2.0);
  const double c = 0.5 * (dims.n() - 2 * dims.k()) * (p - 2.0) / (8.0 * geo.vol) / a10 * K;
  const std::map<std::string, double> params{{"n", dims.n()}, {"k", dims.k()}};

  QuarticConstant q;
  q.c = c;
  q.positive = c > 0.0;
  q.alphaIneq = make_verdict("alpha20_lower_bound", params, (2.0 * p - 1.0) / (p + 1.0) * a10, a20);
  q.convexity = make_verdict("alpha20_convexity", params, (2.0 - 1.0 / (p - 1.0)) * a10, a20);
  const SpectralPolynomial poly(dims);
  const double x = 1.0 / geo.tau0;
  q.printedIntermediateYValue = poly.evaluate(2.0 * x);
  q.printedIntermediateY = make_verdict("alpha20_printed_intermediate_Y", params,
                                        2.0 * poly.evaluate(x) - poly.evaluate(0.0), q.printedIntermediateYValue);
  return q;
}

std::vector<GreensValue> greens_kernel(const Dims& dims, double tau, const std::vector<GreensPoint>& points,
                                       int truncation, double tailTol) {
  if (!(tau > 0.0)) throw DomainError("greens_kernel: tau must be positive");
  if (truncation < 1) throw DomainError("greens_kernel: truncation >= 1 required");
  const double beta = 0.5 * (dims.n() - 2 * dims.k());
  const double period = 2.0 * std::numbers::pi * tau;
  const auto n = static_cast<std::size_t>(dims.n());
  std::vector<GreensValue> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    if (pt.omega.size() != n || pt.eta.size() != n)
      throw DomainError("greens_kernel: sphere points must be unit vectors in R^n");
    double no = 0.0, ne = 0.0, gap2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      no += pt.omega[i] * pt.omega[i];
      ne += pt.eta[i] * pt.eta[i];
      gap2 += (pt.omega[i] - pt.eta[i]) * (pt.omega[i] - pt.eta[i]);
    }
    if (std::abs(no - 1.0) > 1e-12 || std::abs(ne - 1.0) > 1e-12)
      throw DomainError("greens_kernel: sphere points must be unit vectors in R^n");
    const double oneMinusC = 0.5 * gap2;  // 1 - <omega, eta>
    // reduce t - s into (-period/2, period/2]
    double d = std::remainder(pt.t - pt.s, period);
    if (std::abs(d) <= 1e-12 * period && gap2 <= 1e-24) throw DomainError("greens_kernel: coincident points (kernel is singular)");

    auto term = [&](int m) {
      const double x = d - m * period;
      const double sh = std::sinh(0.5 * x);
      return std::pow(2.0 * sh * sh + oneMinusC, -beta);
    };
    auto tail = [&](int M) {
      // cosh(x) - c >= e^{|x|}/4 once |x| >= ln 4; geometric sum on both sides
      const double xmin = (M + 1) * period - std::abs(d);
      if (xmin < std::log(4.0)) return std::numeric_limits<double>::infinity();
      const double ratio = std::exp(-beta * period);
      return 2.0 * std::pow(4.0, beta) * std::exp(-beta * xmin) / (1.0 - ratio);
    };
    double sum = term(0);
    int M = 0;
    auto extend = [&](int to) {
      for (int m = M + 1; m <= to; ++m) sum += term(m) + term(-m);
      M = to;
    };
    extend(truncation);
    while (tail(M) > tailTol * sum) {
      if (M > 1000000) throw AccuracyError("greens_kernel: tail bound not reached");
      extend(M + 1);
    }
    out.push_back({sum, tail(M), M});
  }
  return out;
}

}  // namespace qcurve
