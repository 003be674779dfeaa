#include "qcurve/as3.hpp"

#include "qcurve/error.hpp"
#include "qcurve/parallel.hpp"
#include "qcurve/special.hpp"

#include <cmath>
#include <random>

namespace qcurve {

std::string to_string(FiberKind kind) { return kind == FiberKind::Sphere ? "sphere" : "cp"; }

std::string to_string(LaplacianConvention conv) {
  return conv == LaplacianConvention::Printed ? "printed" : "geometric";
}

std::string to_string(RootPattern p) {
  switch (p) {
    case RootPattern::OppositeSigns: return "opposite_signs";
    case RootPattern::BothNegative: return "both_negative";
    case RootPattern::BothPositive: return "both_positive";
    case RootPattern::ZeroRoot: return "zero_root";
    case RootPattern::NoRealRoots: return "no_real_roots";
    case RootPattern::Degenerate: return "degenerate";
  }
  return "unknown";
}

int Fiber::real_dimension() const { return kind == FiberKind::Sphere ? ell : 2 * ell; }

ExactScalar Fiber::einstein_constant() const {
  return kind == FiberKind::Sphere ? ExactScalar(ell - 1) : ExactScalar(2 * (ell + 1));
}

ExactScalar Fiber::scalar_curvature() const {
  return kind == FiberKind::Sphere ? ExactScalar(ell * (ell - 1)) : ExactScalar(4 * ell * (ell + 1));
}

ExactScalar Fiber::ricci_norm_sq() const {
  return kind == FiberKind::Sphere ? ExactScalar(ell * (ell - 1) * (ell - 1))
                                   : ExactScalar(8 * ell * (ell + 1) * (ell + 1));
}

ExactScalar Fiber::test_eigenvalue() const {
  return kind == FiberKind::Sphere ? ExactScalar(2 * (ell + 1)) : ExactScalar(8 * ell + 16);
}

void EinsteinProductSpec::validate() const {
  if (baseDim < 1) throw DomainError("EinsteinProductSpec: base dimension m >= 1 required");
  if (fiber.ell < 2) throw DomainError("EinsteinProductSpec: fiber parameter l >= 2 required");
  const int n = total_dimension();
  if (n < 5)
    throw DomainError("EinsteinProductSpec: total dimension n = " + std::to_string(n) +
                      " < 5; the fourth-order formulas need n >= 5");
}

double ExactQuadratic::evaluate(double lambda) const {
  return (a.to_double() * lambda + b.to_double()) * lambda + c.to_double();
}

namespace {

struct Constants {
  ExactScalar n, Cn, A;
};

Constants constants_for(const EinsteinProductSpec& spec) {
  spec.validate();
  const ExactScalar n(spec.total_dimension());
  const ExactScalar n1 = n - ExactScalar(1), n2 = n - ExactScalar(2);
  const ExactScalar Cn = (n * n * n - ExactScalar(4) * n * n + ExactScalar(16) * n - ExactScalar(16)) /
                         (ExactScalar(8) * n1 * n1 * n2 * n2);
  const ExactScalar A = (n2 * n2 + ExactScalar(4)) / (ExactScalar(2) * n1 * n2);
  return {n, Cn, A};
}

ExactScalar fiber_laplacian(const EinsteinProductSpec& spec, LaplacianConvention conv) {
  const ExactScalar mu = spec.fiber.test_eigenvalue();
  return conv == LaplacianConvention::Geometric ? -mu : mu;
}

}  // namespace

ExactQuadratic q2_of_product(const EinsteinProductSpec& spec) {
  const auto k = constants_for(spec);
  const ExactScalar m(spec.baseDim);
  const ExactScalar n2 = k.n - ExactScalar(2);
  const ExactScalar ricW = ExactScalar(2) / (n2 * n2);
  const ExactScalar Rf = spec.fiber.scalar_curvature();
  // |Ric|^2 = m lambda^2 + Ric_f,  R = m lambda + R_f
  return {k.Cn * m * m - ricW * m, ExactScalar(2) * k.Cn * m * Rf, k.Cn * Rf * Rf - ricW * spec.fiber.ricci_norm_sq()};
}

namespace {

void fill_roots(LambdaQuadratic& q) {
  const double a = q.a.to_double(), b = q.b.to_double(), c = q.c.to_double();
  if (q.discriminant.sign() < 0 || q.a.is_zero()) return;
  const double sd = std::sqrt(q.discriminant.to_double());
  const double t = -0.5 * (b + std::copysign(sd, b));
  double r1, r2;
  if (t == 0.0) {
    r1 = r2 = -b / (2.0 * a);
  } else {
    r1 = t / a;
    r2 = c / t;
  }
  if (r1 > r2) std::swap(r1, r2);
  q.roots = std::make_pair(r1, r2);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  auto val = [&](double r) { return std::abs((a * r + b) * r + c); };
  q.rootResidual = std::max(val(r1), val(r2)) / scale;
}

}  // namespace

LambdaQuadratic shifted_paneitz_eigenvalue(const EinsteinProductSpec& spec, LaplacianConvention conv) {
  const auto k = constants_for(spec);
  const auto Q = q2_of_product(spec);
  const ExactScalar m(spec.baseDim);
  const ExactScalar L = fiber_laplacian(spec, conv);
  const ExactScalar ricTerm = ExactScalar(4) / (k.n - ExactScalar(2)) * spec.fiber.einstein_constant();
  const ExactScalar Rf = spec.fiber.scalar_curvature();
  LambdaQuadratic q;
  q.a = ExactScalar(-4) * Q.a;
  q.b = -(k.A * m * L) - ExactScalar(4) * Q.b;
  q.c = L * L + ricTerm * L - k.A * Rf * L - ExactScalar(4) * Q.c;
  q.discriminant = q.b * q.b - ExactScalar(4) * q.a * q.c;
  fill_roots(q);
  return q;
}

double q2_shadow(const EinsteinProductSpec& spec, double lambda) {
  spec.validate();
  const double n = spec.total_dimension(), m = spec.baseDim;
  const double R = m * lambda + spec.fiber.scalar_curvature().to_double();
  const double ric2 = m * lambda * lambda + spec.fiber.ricci_norm_sq().to_double();
  return -2.0 / ((n - 2) * (n - 2)) * ric2 +
         (n * n * n - 4 * n * n + 16 * n - 16) / (8 * (n - 1) * (n - 1) * (n - 2) * (n - 2)) * R * R;
}

double shifted_paneitz_shadow(const EinsteinProductSpec& spec, double lambda, LaplacianConvention conv) {
  const double n = spec.total_dimension(), m = spec.baseDim;
  const double mu = spec.fiber.test_eigenvalue().to_double();
  const double L = conv == LaplacianConvention::Geometric ? -mu : mu;
  const double R = m * lambda + spec.fiber.scalar_curvature().to_double();
  const double A = ((n - 2) * (n - 2) + 4) / (2 * (n - 1) * (n - 2));
  const double fc = spec.fiber.einstein_constant().to_double();
  return L * L + 4.0 / (n - 2) * fc * L - A * R * L - 4.0 * q2_shadow(spec, lambda);
}

RootPattern root_pattern(const LambdaQuadratic& q) {
  if (q.a.is_zero()) return RootPattern::Degenerate;
  if (q.discriminant.sign() < 0) return RootPattern::NoRealRoots;
  if (q.c.is_zero()) return RootPattern::ZeroRoot;
  const ExactScalar product = q.c / q.a;
  if (product.sign() < 0) return RootPattern::OppositeSigns;
  const ExactScalar sum = -q.b / q.a;
  return sum.sign() < 0 ? RootPattern::BothNegative : RootPattern::BothPositive;
}

RootPattern predicted_pattern(FiberKind kind, int ell) {
  const int lastOpposite = kind == FiberKind::Sphere ? 5 : 3;
  return ell <= lastOpposite ? RootPattern::OppositeSigns : RootPattern::BothNegative;
}

As3Verdict as3_verdict(FiberKind fiber, int ell, int mMin, int mMax, LaplacianConvention conv, int jobs) {
  if (ell < 2) throw DomainError("as3_verdict: l >= 2 required");
  if (mMin < 1 || mMax < mMin) throw DomainError("as3_verdict: need 1 <= mMin <= mMax");
  As3Verdict v{fiber, ell, conv, predicted_pattern(fiber, ell), {}, std::nullopt};
  const auto count = static_cast<std::size_t>(mMax - mMin + 1);
  v.rows = parallel_map(count, jobs, [&](std::size_t i) {
    const int m = mMin + static_cast<int>(i);
    const EinsteinProductSpec spec{m, {fiber, ell}};
    As3Row row{m, ExactScalar(0), false, std::nullopt, std::nullopt, RootPattern::Degenerate};
    if (spec.total_dimension() < 5) return row;
    const auto q = shifted_paneitz_eigenvalue(spec, conv);
    row.discriminant = q.discriminant;
    row.discriminantPositive = q.discriminant.sign() > 0;
    if (q.roots) {
      row.lambdaMinus = q.roots->first;
      row.lambdaPlus = q.roots->second;
    }
    row.pattern = root_pattern(q);
    return row;
  });
  for (auto it = v.rows.rbegin(); it != v.rows.rend(); ++it) {
    if (it->pattern != v.predicted) break;
    v.leastStableM = it->m;
  }
  return v;
}

PrintedLeading printed_leading(FiberKind kind, int ell, int m) {
  const ExactScalar M(m), l(ell);
  PrintedLeading p;
  p.a = -M / ExactScalar(2) + ExactScalar(2);
  if (kind == FiberKind::Sphere) {
    p.b = -M * (l + ExactScalar(1)) - l * l + ExactScalar(5) * l + ExactScalar(4);
    p.c = -l * l * l + ExactScalar(4) * l * l + ExactScalar(9) * l + ExactScalar(4);
    p.discriminant = M * M * (l + ExactScalar(1)) * (l + ExactScalar(1));
  } else {
    p.b = ExactScalar(-4) * M * (l + ExactScalar(2)) - ExactScalar(4) * (l * l - ExactScalar(3) * l - ExactScalar(8));
    p.c = ExactScalar(-16) * l * l * l + ExactScalar(16) * l * l + ExactScalar(224) * l + ExactScalar(256);
    p.discriminant = ExactScalar(16) * M * M;
  }
  return p;
}

std::vector<AsymptoticCheck> asymptotic_consistency(FiberKind kind, int ell, LaplacianConvention conv, int mMax) {
  if (mMax < 2000) throw DomainError("asymptotic_consistency: mMax >= 2000 required");
  std::vector<int> ms{100, 200, 500, 1000};
  for (int m : {2000, 5000, 10000, 20000, 50000, 100000})
    if (m <= mMax) ms.push_back(m);
  if (ms.back() != mMax) ms.push_back(mMax);

  std::vector<AsymptoticCheck> out{{"a", {}, 0, 0, false, 0}, {"b", {}, 0, 0, false, 0},
                                   {"c", {}, 0, 0, false, 0}, {"disc", {}, 0, 0, false, 0}};
  for (int m : ms) {
    const auto q = shifted_paneitz_eigenvalue({m, {kind, ell}}, conv);
    const auto p = printed_leading(kind, ell, m);
    const ExactScalar M(m);
    const ExactScalar diffs[4] = {q.a - p.a, q.b - p.b, q.c - p.c, q.discriminant - p.discriminant};
    for (int i = 0; i < 4; ++i) {
      const ExactScalar scaled = i < 3 ? diffs[i] * M : diffs[i] / M;
      const double s = scaled.to_double();
      auto& chk = out[static_cast<std::size_t>(i)];
      chk.scaled.emplace_back(m, s);
      if (m <= 1000) chk.earlyMax = std::max(chk.earlyMax, std::abs(s));
      else chk.lateMax = std::max(chk.lateMax, std::abs(s));
      chk.offsetAtMax = (i < 3 ? diffs[i] : diffs[i] / M).to_double();
    }
  }
  for (auto& chk : out) chk.bounded = chk.lateMax <= 2.0 * chk.earlyMax + 1e-9;
  return out;
}

CubicMonteCarlo cubic_integral_monte_carlo(int ell, std::size_t samples, std::uint64_t seed) {
  if (ell < 2) throw DomainError("cubic_integral_monte_carlo: l >= 2 required (needs three coordinates)");
  if (samples < 2) throw DomainError("cubic_integral_monte_carlo: at least two samples required");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto dim = static_cast<std::size_t>(ell + 1);
  std::vector<double> x(dim);
  double mean = 0.0, m2 = 0.0;  // Welford
  for (std::size_t i = 0; i < samples; ++i) {
    double r2 = 0.0;
    for (auto& xi : x) {
      xi = gauss(rng);
      r2 += xi * xi;
    }
    const double inv = 1.0 / std::sqrt(r2);
    const double x1 = x[0] * inv, x2 = x[1] * inv, x3 = x[2] * inv;
    const double v = x1 * x2 + x2 * x3 + x3 * x1;
    const double f = v * v * v;
    const double delta = f - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (f - mean);
  }
  const double vol = sphere_volume(ell);
  const double var = m2 / static_cast<double>(samples - 1);
  CubicMonteCarlo mc{ell, vol * mean, vol * std::sqrt(var / static_cast<double>(samples)), samples, false};
  mc.nonzero = std::abs(mc.integral) >= 3.0 * mc.standardError;
  return mc;
}

}  // namespace qcurve
