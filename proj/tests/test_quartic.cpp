// quartic_probe: degenerate family, exponent fits, fourth-order expansion, plateau constant.
#include <doctest.h>

#include "qcurve/error.hpp"
#include "qcurve/qfunctional.hpp"
#include "qcurve/quartic.hpp"
#include "qcurve/spectral.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

using namespace qcurve;

namespace {
const std::vector<std::pair<int, int>> kPilot{{5, 1}, {6, 2}, {7, 2}, {7, 3}};
}

TEST_CASE("optimal b") {
  CHECK(optimal_b(Dims(5, 1), 0.0) == 0.0);
  // alpha_{1,0} = 21/4, alpha_{2,0} = 57/4, 2* = 10/3 at (5,1)
  CHECK(optimal_b(Dims(5, 1), 0.1) == doctest::Approx(0.7 / 36).epsilon(1e-12));
  CHECK(optimal_b(Dims(7, 3), 0.1) == doctest::Approx(2 * optimal_b(Dims(7, 3), 0.05)).epsilon(1e-14));
  CHECK_THROWS_AS(optimal_b(Dims(5, 1), 0.3), DomainError);
  CHECK_THROWS_AS(optimal_b(Dims(5, 1), -0.1), DomainError);
}

TEST_CASE("xi grid") {
  const auto g = default_xi_grid();
  REQUIRE(g.size() == 14);
  CHECK(g.front() == 0.1);
  CHECK(g.back() >= 1e-3);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(degenerate_sequence(Dims(5, 1), {0.1, 0.05}), DomainError);
}

TEST_CASE("degenerate family: positivity, quartic exponent, plateau") {
  for (auto [n, k] : kPilot) {
    CAPTURE(n);
    CAPTURE(k);
    const Dims d(n, k);
    const auto s = degenerate_sequence(d, default_xi_grid(), 2);
    for (const auto& x : s) CHECK(x.deficit >= -1e-12 * x.yamabe);
    CHECK(s.back().deficit > 0.0);

    const auto fit = fit_exponent(s);
    CHECK(std::abs(fit.exponent - 4.0) <= 0.05);
    CHECK(fit.r2 > 0.9999);
    const auto fitDist = fit_exponent(s, DistanceMetric::Dist);
    CHECK(std::abs(fitDist.exponent - 4.0) <= 0.05);

    // smaller window, closer to 4
    std::vector<DeficitSample> tail(s.begin() + 6, s.end());
    CHECK(std::abs(fit_exponent(tail).exponent - 4.0) < std::abs(fit.exponent - 4.0));

    const auto pl = plateau_report(d, s);
    CHECK(pl.spread <= 0.05);
    CHECK(std::abs(pl.ratio - 1.0) <= 0.1);
  }
}

TEST_CASE("first-mode-only and second-mode control sequences") {
  for (auto [n, k] : kPilot) {
    const Dims d(n, k);
    const auto g = default_xi_grid();
    const auto deg = fit_exponent(degenerate_sequence(d, g));
    const auto b0s = probe_sequence(d, g, SequenceKind::FirstModeOnly);
    const auto b0 = fit_exponent(b0s);
    CHECK(std::abs(b0.exponent - 4.0) <= 0.05);
    CHECK(b0.prefactor > deg.prefactor);
    const auto pl0 = plateau_report(d, b0s), pl = plateau_report(d, degenerate_sequence(d, g));
    CHECK(pl0.plateau > pl.plateau);
    const auto ctrl = fit_exponent(probe_sequence(d, g, SequenceKind::SecondModeOnly));
    CHECK(std::abs(ctrl.exponent - 2.0) <= 0.05);
  }
}

TEST_CASE("parallel and serial sweeps agree bitwise") {
  const Dims d(6, 2);
  const auto a = degenerate_sequence(d, default_xi_grid(), 1);
  const auto b = degenerate_sequence(d, default_xi_grid(), 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].xi == b[i].xi);
    CHECK(a[i].deficit == b[i].deficit);
    CHECK(a[i].energyDist == b[i].energyDist);
  }
}

TEST_CASE("fit floor") {
  auto s = degenerate_sequence(Dims(5, 1), default_xi_grid());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i >= 4) s[i].deficit = 1e-20;
  CHECK_THROWS_AS(fit_exponent(s), AccuracyError);
}

TEST_CASE("fourth-order expansion against quadrature") {
  for (auto [n, k] : kPilot) {
    const Dims d(n, k);
    const auto r = frank3_expansion_check(d, 0.02, 0.0);
    CHECK(r.relDiscrepancy < 1e-2);
    const auto o = frank3_order_check(d, 0.02, 0.5);
    CHECK(o.ratio >= 16 * 0.8);
    CHECK(o.ratio <= 32 * 1.2);
  }
  CHECK_THROWS_AS(frank3_expansion_check(Dims(5, 1), 0.1, 0.0), DomainError);
}

TEST_CASE("trig moments") {
  for (auto [n, k] : kPilot) {
    const auto m = phi_moments(Dims(n, k));
    CHECK(m.relErr4 <= 1e-12);
    CHECK(m.relErr2 <= 1e-12);
  }
}

TEST_CASE("b* minimizes the deficit") {
  for (auto [n, k] : kPilot) {
    const Dims d(n, k);
    for (double xi : {0.02, 0.01}) {
      const auto m = minimize_deficit_over_b(d, xi);
      CHECK(m.deficit <= m.deficitAtBStar);
      CHECK(m.deficitAtBStar <= (1 + 1e-3) * m.deficit);
    }
    // independent bracket search in b at xi = 0.05
    const double xi = 0.05;
    const double tau0 = solve_tau0(d).tau0;
    auto f = [&](double b) {
      return deficit_and_distance(RadialFourierFunction(d, tau0, 1.0, {xi, xi * b}, {0.0, 0.0})).deficit;
    };
    const auto best = boost::math::tools::brent_find_minima(f, -0.5, 0.5, 30);
    CHECK(std::abs(best.first - optimal_b(d, xi)) <= 10 * xi * xi);
  }
}
