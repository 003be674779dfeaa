#include "qcurve/quartic.hpp"

#include "qcurve/error.hpp"
#include "qcurve/inequality.hpp"
#include "qcurve/parallel.hpp"
#include "qcurve/qfunctional.hpp"
#include "qcurve/spectral.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace qcurve {

namespace {

struct Critical {
  double tau0, p, c0, a00, a10, a20;
};

Critical critical_data(const Dims& d) {
  const double tau0 = solve_tau0(d).tau0;
  return {tau0,
          d.two_star(),
          2.0 / (d.n() - 2 * d.k()),
          alpha(d, {0, 0}, tau0),
          alpha(d, {1, 0}, tau0),
          alpha(d, {2, 0}, tau0)};
}

RadialFourierFunction family(const Dims& d, double tau0, double xi, double b) {
  return RadialFourierFunction(d, tau0, 1.0, {xi, xi * b}, {0.0, 0.0});
}

DeficitSample sample_of(const RadialFourierFunction& u, double xi, double b, double yamabe,
                        const QuadratureConfig& quad) {
  const auto r = deficit_and_distance(u, quad);
  return {xi, b, r.deficit, r.dist, r.energyDist, r.normSquared, yamabe};
}

void check_xi(double xi, double hi, const char* who) {
  if (!(xi > 0.0 && xi <= hi))
    throw DomainError(std::string(who) + ": xi must lie in (0, " + std::to_string(hi) + "], got " + std::to_string(xi));
}

}  // namespace

const char* to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::Degenerate: return "degenerate";
    case SequenceKind::FirstModeOnly: return "first-mode";
    case SequenceKind::SecondModeOnly: return "second-mode";
  }
  return "?";
}

const char* to_string(DistanceMetric metric) { return metric == DistanceMetric::Dist ? "dist" : "energyDist"; }

double optimal_b(const Dims& dims, double xi) {
  if (!(xi >= 0.0 && xi <= 0.2)) throw DomainError("optimal_b: xi must lie in [0, 0.2]");
  const auto c = critical_data(dims);
  return c.a10 * (c.p - 2.0) * xi / (4.0 * (c.a20 - c.a10));
}

std::vector<double> default_xi_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 13; ++i) g.push_back(0.1 * std::pow(2.0, -0.5 * i));
  return g;
}

std::vector<DeficitSample> probe_sequence(const Dims& dims, const std::vector<double>& xiGrid, SequenceKind kind,
                                          int jobs, const QuadratureConfig& quad) {
  if (xiGrid.size() < 8) throw DomainError("probe_sequence: at least 8 xi values required");
  for (double xi : xiGrid) check_xi(xi, 0.2, "probe_sequence");
  const auto c = critical_data(dims);
  const double bRate = c.a10 * (c.p - 2.0) / (4.0 * (c.a20 - c.a10));
  const double yam = GeometryConstants::at(dims, c.tau0, quad).yamabe;
  return parallel_map(xiGrid.size(), jobs, [&](std::size_t i) {
    const double xi = xiGrid[i];
    if (kind == SequenceKind::SecondModeOnly) {
      const RadialFourierFunction u(dims, c.tau0, 1.0, {0.0, xi}, {0.0, 0.0});
      return sample_of(u, xi, 0.0, yam, quad);
    }
    const double b = kind == SequenceKind::Degenerate ? bRate * xi : 0.0;
    return sample_of(family(dims, c.tau0, xi, b), xi, b, yam, quad);
  });
}

std::vector<DeficitSample> degenerate_sequence(const Dims& dims, const std::vector<double>& xiGrid, int jobs,
                                               const QuadratureConfig& quad) {
  return probe_sequence(dims, xiGrid, SequenceKind::Degenerate, jobs, quad);
}

ExponentFit fit_exponent(const std::vector<DeficitSample>& samples, DistanceMetric metric) {
  ExponentFit fit{};
  const double eps = std::numeric_limits<double>::epsilon();
  for (const auto& s : samples) {
    const double x = metric == DistanceMetric::Dist ? s.dist : s.energyDist;
    if (s.deficit > 1e3 * eps * s.yamabe && x > 0.0) fit.samples.push_back(s);
  }
  if (fit.samples.size() < 6)
    throw AccuracyError("fit_exponent: " + std::to_string(fit.samples.size()) +
                        " samples above the deficit floor 1e3*eps*Y, need 6");
  std::vector<double> X, Y;
  for (const auto& s : fit.samples) {
    X.push_back(std::log(metric == DistanceMetric::Dist ? s.dist : s.energyDist));
    Y.push_back(std::log(s.deficit));
  }
  const double n = static_cast<double>(X.size());
  const double mx = std::accumulate(X.begin(), X.end(), 0.0) / n;
  const double my = std::accumulate(Y.begin(), Y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
    syy += (Y[i] - my) * (Y[i] - my);
  }
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  auto [lo, hi] = std::minmax_element(fit.samples.begin(), fit.samples.end(),
                                      [](const auto& a, const auto& b) { return a.xi < b.xi; });
  fit.xiMin = lo->xi;
  fit.xiMax = hi->xi;
  return fit;
}

Frank3Check frank3_expansion_check(const Dims& dims, double xi, double b, const QuadratureConfig& quad) {
  check_xi(xi, 0.05, "frank3_expansion_check");
  const auto c = critical_data(dims);
  const auto u = family(dims, c.tau0, xi, b);
  const double V = GeometryConstants::at(dims, c.tau0, quad).vol;
  const double p = c.p;

  // moments of rho = xi (phi + b psi); only frequency-balanced products survive
  const double A2 = xi * xi * V * (1.0 + b * b) / 2.0;
  const double A3 = std::pow(xi, 3) * 3.0 * b * V / 4.0;
  const double A4 = std::pow(xi, 4) * V * (3.0 / 8.0 + 1.5 * b * b + 3.0 / 8.0 * std::pow(b, 4));
  const double Erho = c.c0 * xi * xi * V * (c.a10 + b * b * c.a20) / 2.0;
  const double g = c.c0 * (p - 1.0) * c.a00;  // Y vol^{2/p - 1} (p - 1)
  const double analytic = Erho - g * (A2 + (p - 2.0) / 3.0 * A3 + (p - 2.0) * (p - 3.0) / 12.0 * A4) +
                          g * (p - 1.0) * (p - 2.0) / (4.0 * V) * A2 * A2;

  Frank3Check r{xi, b, f_deficit(u, quad), analytic, 0, 0};
  r.absDiscrepancy = std::abs(r.quadrature - r.analytic);
  r.relDiscrepancy = r.absDiscrepancy / std::abs(r.analytic);
  return r;
}

Frank3Order frank3_order_check(const Dims& dims, double xi, double b, const QuadratureConfig& quad) {
  Frank3Order o{frank3_expansion_check(dims, xi, b, quad), frank3_expansion_check(dims, xi / 2, b, quad), 0};
  o.ratio = o.coarse.absDiscrepancy / o.fine.absDiscrepancy;
  return o;
}

PhiMoments phi_moments(const Dims& dims, const QuadratureConfig& quad) {
  const double tau0 = solve_tau0(dims).tau0;
  const auto gc = GeometryConstants::at(dims, tau0, quad);
  const double period = 2.0 * std::numbers::pi * tau0;
  const auto r = periodic_trapezoid(
      [&](double t, double* out) {
        const double ph = std::cos(t / tau0);
        out[0] = std::pow(ph, 4);
        out[1] = ph * ph;
      },
      2, period, quad);
  PhiMoments m{gc.vol, gc.omegaNminus1 * r.values[0], std::pow(gc.omegaNminus1 * r.values[1], 2), 0, 0};
  m.relErr4 = std::abs(m.phi4 - 3.0 * m.vol / 8.0) / (3.0 * m.vol / 8.0);
  m.relErr2 = std::abs(m.phi2Sq - m.vol * m.vol / 4.0) / (m.vol * m.vol / 4.0);
  return m;
}

BMinimum minimize_deficit_over_b(const Dims& dims, double xi, const QuadratureConfig& quad) {
  check_xi(xi, 0.2, "minimize_deficit_over_b");
  const auto c = critical_data(dims);
  const double bStar = c.a10 * (c.p - 2.0) * xi / (4.0 * (c.a20 - c.a10));
  auto deficit = [&](double b) {
    const auto u = family(dims, c.tau0, xi, b);
    return f_deficit(u, quad) / std::pow(lp_norm_2star(u, quad), 2);
  };
  const double w = std::max(4.0 * bStar, 10.0 * xi * xi);
  const auto best = boost::math::tools::brent_find_minima(deficit, bStar - w, bStar + w, 40);
  return {xi, best.first, best.second, bStar, deficit(bStar)};
}

double assembled_plateau_constant(const Dims& dims, const QuadratureConfig& quad) {
  const auto c = critical_data(dims);
  const auto gc = GeometryConstants::at(dims, c.tau0, quad);
  const double ePhi = c.c0 * c.a10 * gc.vol / 2.0;
  const double norm1 = std::pow(gc.vol, 2.0 / c.p);
  return quartic_constant_c(dims).c * ePhi * ePhi / norm1;
}

PlateauReport plateau_report(const Dims& dims, const std::vector<DeficitSample>& degenerate) {
  if (degenerate.size() < 3) throw DomainError("plateau_report: at least three samples required");
  PlateauReport r{};
  for (const auto& s : degenerate) r.scaled.emplace_back(s.xi, s.deficit / std::pow(s.xi, 4));
  auto sorted = r.scaled;
  std::sort(sorted.begin(), sorted.end());
  r.plateau = (sorted[0].second + sorted[1].second + sorted[2].second) / 3.0;
  for (int i = 0; i < 3; ++i) r.spread = std::max(r.spread, std::abs(sorted[i].second - r.plateau) / r.plateau);
  r.assembled = assembled_plateau_constant(dims);
  r.ratio = r.plateau / r.assembled;
  return r;
}

}  // namespace qcurve
