#include "qcurve/qfunctional.hpp"

#include "qcurve/error.hpp"
#include "qcurve/special.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <numbers>

namespace qcurve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double prefactor(const Dims& d) { return 2.0 / (d.n() - 2 * d.k()); }

// alpha_{m,0}(tau) for m = 0..M
std::vector<double> circle_alphas(const Dims& dims, double tau, int M) {
  std::vector<double> a(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) a[static_cast<std::size_t>(m)] = alpha(dims, {m, 0}, tau);
  return a;
}

double volume(const Dims& dims, double tau) { return kTwoPi * tau * sphere_volume(dims.n() - 1); }

// |x|^e with the sign of x carried along (x^e for x > 0)
double signed_pow(double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); }

void check_sample(double value, const QuadratureConfig& quad, const char* who) {
  if (!quad.absoluteValue && !(value > 0.0))
    throw DomainError(std::string(who) + ": conformal factor is not positive on the quadrature grid");
}

// basis function i of the coefficient layout evaluated at theta = t/tau
double basis(std::size_t i, int M, double theta) {
  if (i == 0) return 1.0;
  const auto Ms = static_cast<std::size_t>(M);
  if (i <= Ms) return std::cos(static_cast<double>(i) * theta);
  return std::sin(static_cast<double>(i - Ms) * theta);
}

}  // namespace

RadialFourierFunction::RadialFourierFunction(const Dims& dims, double tau, double mean, std::vector<double> cosCoeffs,
                                             std::vector<double> sinCoeffs)
    : dims_(dims), tau_(tau), mean_(mean), cos_(std::move(cosCoeffs)), sin_(std::move(sinCoeffs)) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("RadialFourierFunction: tau must be positive");
  if (cos_.size() != sin_.size()) throw DomainError("RadialFourierFunction: cos/sin coefficient counts differ");
  if (cos_.empty()) throw DomainError("RadialFourierFunction: truncation order M >= 1 required");
  bool finite = std::isfinite(mean);
  for (double x : cos_) finite = finite && std::isfinite(x);
  for (double x : sin_) finite = finite && std::isfinite(x);
  if (!finite) throw DomainError("RadialFourierFunction: non-finite coefficient");
}

RadialFourierFunction RadialFourierFunction::constant(const Dims& dims, double tau, double c, int order) {
  const auto M = static_cast<std::size_t>(std::max(order, 1));
  return {dims, tau, c, std::vector<double>(M, 0.0), std::vector<double>(M, 0.0)};
}

RadialFourierFunction RadialFourierFunction::from_coefficients(const Dims& dims, double tau,
                                                               const std::vector<double>& coeffs) {
  if (coeffs.size() < 3 || coeffs.size() % 2 == 0)
    throw DomainError("RadialFourierFunction: coefficient vector must have odd length >= 3");
  const std::size_t M = (coeffs.size() - 1) / 2;
  std::vector<double> a(coeffs.begin() + 1, coeffs.begin() + 1 + static_cast<std::ptrdiff_t>(M));
  std::vector<double> b(coeffs.begin() + 1 + static_cast<std::ptrdiff_t>(M), coeffs.end());
  return {dims, tau, coeffs[0], std::move(a), std::move(b)};
}

std::vector<double> RadialFourierFunction::coefficients() const {
  std::vector<double> c;
  c.reserve(coefficient_count());
  c.push_back(mean_);
  c.insert(c.end(), cos_.begin(), cos_.end());
  c.insert(c.end(), sin_.begin(), sin_.end());
  return c;
}

double RadialFourierFunction::period() const { return kTwoPi * tau_; }

double RadialFourierFunction::operator()(double t) const {
  const double theta = t / tau_;
  double acc = mean_;
  for (std::size_t m = 1; m <= cos_.size(); ++m) {
    const double x = static_cast<double>(m) * theta;
    acc += cos_[m - 1] * std::cos(x) + sin_[m - 1] * std::sin(x);
  }
  return acc;
}

double RadialFourierFunction::min_on_grid(std::size_t points) const {
  double best = INFINITY;
  for (std::size_t i = 0; i < points; ++i)
    best = std::min(best, (*this)(period() * static_cast<double>(i) / static_cast<double>(points)));
  return best;
}

RadialFourierFunction RadialFourierFunction::scaled(double c) const {
  auto a = cos_, b = sin_;
  for (auto& x : a) x *= c;
  for (auto& x : b) x *= c;
  return {dims_, tau_, mean_ * c, std::move(a), std::move(b)};
}

RadialFourierFunction RadialFourierFunction::with_order(int order) const {
  if (order < 1) throw DomainError("RadialFourierFunction: order >= 1 required");
  auto a = cos_, b = sin_;
  a.resize(static_cast<std::size_t>(order), 0.0);
  b.resize(static_cast<std::size_t>(order), 0.0);
  return {dims_, tau_, mean_, std::move(a), std::move(b)};
}

RadialFourierFunction RadialFourierFunction::oscillating_part() const { return {dims_, tau_, 0.0, cos_, sin_}; }

namespace {

RadialFourierFunction combine(const RadialFourierFunction& u, const RadialFourierFunction& v, double sign) {
  if (!(u.dims() == v.dims()) || u.tau() != v.tau())
    throw DomainError("RadialFourierFunction: operands live on different geometries");
  const int M = std::max(u.order(), v.order());
  auto uu = u.with_order(M), vv = v.with_order(M);
  auto a = uu.cos_coeffs(), b = uu.sin_coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] += sign * vv.cos_coeffs()[i];
    b[i] += sign * vv.sin_coeffs()[i];
  }
  return {u.dims(), u.tau(), u.mean() + sign * v.mean(), std::move(a), std::move(b)};
}

}  // namespace

RadialFourierFunction operator+(const RadialFourierFunction& u, const RadialFourierFunction& v) {
  return combine(u, v, 1.0);
}
RadialFourierFunction operator-(const RadialFourierFunction& u, const RadialFourierFunction& v) {
  return combine(u, v, -1.0);
}

GeometryConstants GeometryConstants::at(const Dims& dims, double tau, const QuadratureConfig& quad) {
  if (!(tau > 0.0)) throw DomainError("GeometryConstants: tau must be positive");
  const double omega = sphere_volume(dims.n() - 1);
  const double yamabe = q_functional(RadialFourierFunction::constant(dims, tau, 1.0), quad);
  return {dims, tau, kTwoPi * tau * omega, omega, yamabe, sobolev_sharp(dims.n(), dims.k())};
}

GeometryConstants GeometryConstants::critical(const Dims& dims, const QuadratureConfig& quad) {
  return at(dims, solve_tau0(dims).tau0, quad);
}

double energy_E(const RadialFourierFunction& u) {
  const auto& d = u.dims();
  const double vol = volume(d, u.tau());
  const auto al = circle_alphas(d, u.tau(), u.order());
  double acc = u.mean() * u.mean() * al[0] * vol;
  for (int m = 1; m <= u.order(); ++m) {
    const auto i = static_cast<std::size_t>(m - 1);
    const double a = u.cos_coeffs()[i], b = u.sin_coeffs()[i];
    acc += (a * a + b * b) * al[static_cast<std::size_t>(m)] * 0.5 * vol;
  }
  return prefactor(d) * acc;
}

namespace {

double power_integral(const RadialFourierFunction& u, const QuadratureConfig& quad) {
  const double p = u.dims().two_star();
  const double I = periodic_trapezoid_scalar(
      [&](double t) {
        const double x = u(t);
        check_sample(x, quad, "lp_norm_2star");
        return std::pow(std::abs(x), p);
      },
      u.period(), quad);
  return sphere_volume(u.dims().n() - 1) * I;
}

}  // namespace

double lp_norm_2star(const RadialFourierFunction& u, const QuadratureConfig& quad) {
  return std::pow(power_integral(u, quad), 1.0 / u.dims().two_star());
}

double q_functional(const RadialFourierFunction& u, const QuadratureConfig& quad) {
  const double nrm = lp_norm_2star(u, quad);
  return energy_E(u) / (nrm * nrm);
}

double wk2_norm(const RadialFourierFunction& u) {
  const double vol = volume(u.dims(), u.tau());
  double acc = u.mean() * u.mean() * vol;
  for (int m = 1; m <= u.order(); ++m) {
    const auto i = static_cast<std::size_t>(m - 1);
    const double w = std::pow(1.0 + m * m / (u.tau() * u.tau()), u.dims().k());
    acc += w * (u.cos_coeffs()[i] * u.cos_coeffs()[i] + u.sin_coeffs()[i] * u.sin_coeffs()[i]) * 0.5 * vol;
  }
  return std::sqrt(acc);
}

namespace {

struct FParts {
  double f;
  double normSquared;
};

FParts f_parts(const RadialFourierFunction& u, const QuadratureConfig& quad) {
  const auto& d = u.dims();
  const double p = d.two_star();
  const double vol = volume(d, u.tau());
  const double ubar = u.mean();
  const double c = prefactor(d);
  const auto al = circle_alphas(d, u.tau(), u.order());
  // near-zero mean: no useful factorization, fall back to the plain difference
  if (!(ubar > 0.0)) {
    const double nrm = lp_norm_2star(u, quad);
    const double yam = c * al[0] * std::pow(vol, 1.0 - 2.0 / p);
    return {energy_E(u) - yam * nrm * nrm, nrm * nrm};
  }
  const auto rho = u.scaled(1.0 / ubar).oscillating_part();
  double eRho = 0.0;
  for (int m = 1; m <= u.order(); ++m) {
    const auto i = static_cast<std::size_t>(m - 1);
    const double a = rho.cos_coeffs()[i], b = rho.sin_coeffs()[i];
    eRho += al[static_cast<std::size_t>(m)] * (a * a + b * b) * 0.5;
  }
  // g = (1+rho)^p - 1 - p rho, averaged over the circle
  const double G = periodic_trapezoid_scalar(
      [&](double t) {
        const double r = rho(t);
        check_sample(1.0 + r, quad, "f_deficit");
        const double lg = (1.0 + r > 0.0) ? std::log1p(r) : std::log(std::abs(1.0 + r));
        return std::expm1(p * lg) - p * r;
      },
      u.period(), quad);
  const double X = G / u.period();
  const double growth = std::expm1((2.0 / p) * std::log1p(X));  // (1+X)^{2/p} - 1
  const double f = ubar * ubar * c * vol * (eRho - al[0] * growth);
  const double normSquared = ubar * ubar * std::pow(vol, 2.0 / p) * (1.0 + growth);
  return {f, normSquared};
}

}  // namespace

double f_deficit(const RadialFourierFunction& u, const QuadratureConfig& quad) { return f_parts(u, quad).f; }

DeficitReport deficit_and_distance(const RadialFourierFunction& u, const QuadratureConfig& quad) {
  const FParts parts = f_parts(u, quad);
  DeficitReport r{};
  r.fDeficit = parts.f;
  r.normSquared = parts.normSquared;
  r.deficit = parts.f / parts.normSquared;
  const double yam = GeometryConstants::at(u.dims(), u.tau(), quad).yamabe;
  r.quotientDeficit = q_functional(u, quad) - yam;

  const double full = wk2_norm(u);
  const auto osc = u.oscillating_part();
  r.dist = wk2_norm(osc) / full;
  r.energyDist = std::sqrt(energy_E(osc));

  double lo = 0.5 * u.mean(), hi = 2.0 * u.mean();
  if (lo > hi) std::swap(lo, hi);
  auto objective = [&](double c) {
    return wk2_norm(u - RadialFourierFunction::constant(u.dims(), u.tau(), c, u.order())) / full;
  };
  const auto best = boost::math::tools::brent_find_minima(objective, lo, hi, std::numeric_limits<double>::digits);
  r.distInfimum = best.second;
  r.infimumAgrees = std::abs(r.distInfimum - r.dist) <= 1e-6 * r.dist || (r.dist < 1e-15 && r.distInfimum < 1e-15);
  return r;
}

namespace {

struct VariationPieces {
  double A;                // int u P u
  double I;                // int |u|^p
  std::vector<double> B;   // int v_i P u
  std::vector<double> J;   // int |u|^{p-2} u v_i
  std::vector<double> K;   // int |u|^{p-2} v_i v_j, upper triangle packed (empty unless requested)
  std::vector<double> Pdiag;  // int v_i P v_i
};

VariationPieces variation_pieces(const RadialFourierFunction& u, const QuadratureConfig& quad, bool withK) {
  const auto& d = u.dims();
  const double p = d.two_star();
  const int M = u.order();
  const std::size_t nb = u.coefficient_count();
  const double vol = volume(d, u.tau());
  const auto al = circle_alphas(d, u.tau(), M);
  const auto coeffs = u.coefficients();

  VariationPieces vp;
  vp.B.resize(nb);
  vp.Pdiag.resize(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    const std::size_t m = i == 0 ? 0 : (i <= static_cast<std::size_t>(M) ? i : i - static_cast<std::size_t>(M));
    const double norm = i == 0 ? vol : 0.5 * vol;
    vp.Pdiag[i] = al[m] * norm;
    vp.B[i] = al[m] * coeffs[i] * norm;
  }
  vp.A = 0.0;
  for (std::size_t i = 0; i < nb; ++i) vp.A += coeffs[i] * vp.B[i];

  const std::size_t nk = withK ? nb * (nb + 1) / 2 : 0;
  const std::size_t comps = 1 + nb + nk;
  std::vector<double> bv(nb);
  // the oscillating basis has zero mean, so subtracting mean^{p-1} changes
  // nothing but the roundoff near constants
  const double meanPow = signed_pow(u.mean(), p - 1.0);
  auto res = periodic_trapezoid(
      [&](double t, double* out) {
        const double x = u(t);
        check_sample(x, quad, "variation");
        const double theta = t / u.tau();
        const double ax = std::abs(x);
        out[0] = std::pow(ax, p);
        const double up1 = signed_pow(x, p - 1.0);
        for (std::size_t i = 0; i < nb; ++i) {
          bv[i] = basis(i, M, theta);
          out[1 + i] = (i == 0 ? up1 : up1 - meanPow) * bv[i];
        }
        if (withK) {
          const double up2 = std::pow(ax, p - 2.0);
          std::size_t idx = 1 + nb;
          for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = i; j < nb; ++j) out[idx++] = up2 * bv[i] * bv[j];
        }
      },
      comps, u.period(), quad);
  const double omega = sphere_volume(d.n() - 1);
  vp.I = omega * res.values[0];
  vp.J.resize(nb);
  for (std::size_t i = 0; i < nb; ++i) vp.J[i] = omega * res.values[1 + i];
  vp.K.resize(nk);
  for (std::size_t i = 0; i < nk; ++i) vp.K[i] = omega * res.values[1 + nb + i];
  return vp;
}

}  // namespace

std::vector<double> q_gradient(const RadialFourierFunction& u, const QuadratureConfig& quad) {
  const auto& d = u.dims();
  const double p = d.two_star();
  const double c = prefactor(d);
  const auto vp = variation_pieces(u, quad, false);
  const double Ir = std::pow(vp.I, -2.0 / p);
  std::vector<double> g(vp.B.size());
  // r p = -2 folded in exactly
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * c * Ir * (vp.B[i] - vp.A * (vp.J[i] / vp.I));
  return g;
}

std::vector<double> q_hessian(const RadialFourierFunction& u, const QuadratureConfig& quad) {
  const auto& d = u.dims();
  const double p = d.two_star();
  const double c = prefactor(d);
  const double r = -2.0 / p;
  const auto vp = variation_pieces(u, quad, true);
  const std::size_t nb = vp.B.size();
  const double Ir = std::pow(vp.I, r);
  const double Ir1 = Ir / vp.I;
  const double Ir2 = Ir1 / vp.I;
  std::vector<double> H(nb * nb);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = i; j < nb; ++j, ++idx) {
      const double Bij = i == j ? vp.Pdiag[i] : 0.0;
      const double h = c * (2.0 * Bij * Ir + 2.0 * r * p * Ir1 * (vp.B[i] * vp.J[j] + vp.B[j] * vp.J[i]) +
                            vp.A * r * (r - 1.0) * p * p * Ir2 * vp.J[i] * vp.J[j] +
                            vp.A * r * p * (p - 1.0) * Ir1 * vp.K[idx]);
      H[i * nb + j] = h;
      H[j * nb + i] = h;
    }
  return H;
}

GradientCheck gradient_check(const RadialFourierFunction& u, double h, const QuadratureConfig& quad) {
  if (!(h >= 1e-7 && h <= 1e-3)) throw DomainError("gradient_check: h must lie in [1e-7, 1e-3]");
  GradientCheck gc;
  gc.closedForm = q_gradient(u, quad);
  const auto base = u.coefficients();
  gc.finiteDifference.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto plus = base, minus = base;
    plus[i] += h;
    minus[i] -= h;
    const double qp = q_functional(RadialFourierFunction::from_coefficients(u.dims(), u.tau(), plus), quad);
    const double qm = q_functional(RadialFourierFunction::from_coefficients(u.dims(), u.tau(), minus), quad);
    gc.finiteDifference[i] = (qp - qm) / (2.0 * h);
  }
  double scale = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    scale = std::max(scale, std::abs(gc.closedForm[i]));
    worst = std::max(worst, std::abs(gc.closedForm[i] - gc.finiteDifference[i]));
  }
  gc.maxAbsoluteError = worst;
  gc.maxRelativeError = scale > 0.0 ? worst / scale : (worst == 0.0 ? 0.0 : INFINITY);
  return gc;
}

VariationReport hessian_at_one(const Dims& dims, int mMax, int jMax, const QuadratureConfig& quad) {
  if (mMax < 1 || jMax < 1) throw DomainError("hessian_at_one: mMax, jMax >= 1 required");
  const double tau0 = solve_tau0(dims).tau0;
  const double p = dims.two_star();
  const double c = prefactor(dims);
  const double p0 = build_spectral_polynomial(dims).constant_term().to_double();
  const double alpha10 = (p - 1.0) * p0;

  const auto one = RadialFourierFunction::constant(dims, tau0, 1.0, mMax);
  VariationReport rep{dims, q_functional(one, quad), q_gradient(one, quad), {}, {}, BigInt(0)};

  const double tol = 1e-10 * 2.0 * c * alpha10;
  for (int m = 0; m <= mMax; ++m)
    for (int j = 0; j <= jMax; ++j) {
      HessianEntry e{{m, j}, m == 0 ? 1 : 2, spherical_multiplicity(dims.n(), j), 0.0, false};
      if (m == 0 && j == 0) {
        // v = vol^{-1/2}: the int v terms of D^2 ||u||^2 cancel the constant mode exactly
        const double a00 = alpha(dims, {0, 0}, tau0);
        e.value = 2.0 * c * (a00 - (2.0 - p) * p0 - (p - 1.0) * p0);
      } else {
        e.value = 2.0 * c * (alpha(dims, {m, j}, tau0) - alpha10);
      }
      e.kernel = std::abs(e.value) <= tol;
      if (e.kernel) {
        rep.kernelDimension += BigInt(e.parityCount) * e.multiplicity;
        if (m == 0 && j == 0) {
          rep.kernelModes.push_back({{0, 0}, Parity::Constant});
        } else if (j == 0) {
          rep.kernelModes.push_back({{m, 0}, Parity::Cos});
          rep.kernelModes.push_back({{m, 0}, Parity::Sin});
        } else {
          rep.kernelModes.push_back({{m, j}, m == 0 ? Parity::Constant : Parity::CosSinPair});
        }
      }
      rep.hessianDiagonal.push_back(e);
    }
  return rep;
}

ConformalNorms conformal_norms(const RadialFourierFunction& u, const RadialFourierFunction& v,
                               const QuadratureConfig& quad) {
  const auto diff = u - v;
  QuadratureConfig q = quad;
  q.absoluteValue = true;
  const double n2 = lp_norm_2star(diff, q);
  const double e = energy_E(diff);
  return {n2, std::sqrt(std::max(0.0, e / prefactor(u.dims())))};
}

}  // namespace qcurve
