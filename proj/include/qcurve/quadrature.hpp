// Uniform trapezoid rule on a periodic interval [0, period), with grid
// doubling that reuses earlier samples.  Several integrands can share one
// grid; all components must settle before the rule stops.
#pragma once

#include "qcurve/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace qcurve {

struct QuadratureConfig {
  std::size_t initialPoints = 256;
  std::size_t maxPoints = std::size_t{1} << 20;
  double relTol = 1e-12;
  bool absoluteValue = false;  // integrate |u|^p instead of rejecting sign changes
};

struct QuadratureResult {
  std::vector<double> values;
  std::size_t points = 0;
  std::vector<double> relChanges;  // one per doubling
};

// f(t, out) writes `components` integrand values at t.
// Stops once |I_2N - I_N| <= relTol * max(|I_2N|, int |f|) for every component.
template <class F>
QuadratureResult periodic_trapezoid(F&& f, std::size_t components, double period, const QuadratureConfig& cfg) {
  if (cfg.initialPoints < 2 || cfg.initialPoints > cfg.maxPoints)
    throw DomainError("quadrature: need 2 <= initialPoints <= maxPoints");
  std::vector<double> sum(components, 0.0), absSum(components, 0.0), buf(components, 0.0);
  std::size_t n = cfg.initialPoints;
  auto accumulate = [&](double t) {
    f(t, buf.data());
    for (std::size_t c = 0; c < components; ++c) {
      sum[c] += buf[c];
      absSum[c] += std::abs(buf[c]);
    }
  };
  for (std::size_t i = 0; i < n; ++i) accumulate(period * static_cast<double>(i) / static_cast<double>(n));

  QuadratureResult res;
  std::vector<double> prev(components);
  for (std::size_t c = 0; c < components; ++c) prev[c] = sum[c] * period / static_cast<double>(n);

  while (true) {
    if (2 * n > cfg.maxPoints)
      throw AccuracyError("quadrature: no convergence within " + std::to_string(cfg.maxPoints) + " points");
    for (std::size_t i = 0; i < n; ++i)
      accumulate(period * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n)));
    n *= 2;
    bool done = true;
    double worst = 0.0;
    std::vector<double> cur(components);
    for (std::size_t c = 0; c < components; ++c) {
      cur[c] = sum[c] * period / static_cast<double>(n);
      const double scale = std::max(std::abs(cur[c]), absSum[c] * period / static_cast<double>(n));
      const double change = std::abs(cur[c] - prev[c]);
      const double rel = scale > 0.0 ? change / scale : 0.0;
      worst = std::max(worst, rel);
      if (rel > cfg.relTol) done = false;
    }
    res.relChanges.push_back(worst);
    prev = std::move(cur);
    if (done) break;
  }
  res.values = std::move(prev);
  res.points = n;
  return res;
}

template <class F>
double periodic_trapezoid_scalar(F&& f, double period, const QuadratureConfig& cfg) {
  auto r = periodic_trapezoid([&](double t, double* out) { out[0] = f(t); }, 1, period, cfg);
  return r.values[0];
}

}  // namespace qcurve
