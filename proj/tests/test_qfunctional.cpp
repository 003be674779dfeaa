// qfunctional: energy, L^{2*} norm, quotient, deficit, variations, norms.
#include <doctest.h>

#include "qcurve/error.hpp"
#include "qcurve/qfunctional.hpp"
#include "qcurve/special.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qcurve;

namespace {

constexpr double kPi = std::numbers::pi;

double vol_of(const Dims& d, double tau) {
  // |S^{n-1}| by the recursion |S^d| = 2 pi/(d-1) |S^{d-2}|
  int dim = d.n() - 1;
  double s = (dim % 2 == 0) ? 2.0 : 2.0 * kPi;  // |S^0| = 2, |S^1| = 2 pi
  for (int e = (dim % 2 == 0) ? 2 : 3; e <= dim; e += 2) s *= 2.0 * kPi / (e - 1);
  return 2.0 * kPi * tau * s;
}

RadialFourierFunction cos_mode(const Dims& d, double tau, double mean, int m, double amp, int order = 0) {
  const int M = std::max(order, m);
  std::vector<double> a(static_cast<std::size_t>(M), 0.0), b(static_cast<std::size_t>(M), 0.0);
  a[static_cast<std::size_t>(m - 1)] = amp;
  return {d, tau, mean, a, b};
}

RadialFourierFunction random_positive(const Dims& d, double tau, int M, std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> U(-spread, spread);
  std::vector<double> a(static_cast<std::size_t>(M)), b(static_cast<std::size_t>(M));
  for (auto& x : a) x = U(rng);
  for (auto& x : b) x = U(rng);
  return {d, tau, 1.0, a, b};
}

}  // namespace

TEST_CASE("sphere volumes match the recursion oracle") {
  for (int n = 3; n <= 30; ++n) {
    const Dims d(n, 1);
    CHECK(2 * kPi * 0.7 * sphere_volume(n - 1) == doctest::Approx(vol_of(d, 0.7)).epsilon(1e-13));
  }
  CHECK(sphere_volume(2) == doctest::Approx(4 * kPi).epsilon(1e-15));
}

TEST_CASE("function construction and evaluation") {
  const Dims d(5, 1);
  CHECK_THROWS_AS(RadialFourierFunction(d, 1.0, 1.0, {}, {}), DomainError);
  CHECK_THROWS_AS(RadialFourierFunction(d, 1.0, 1.0, {1.0}, {}), DomainError);
  CHECK_THROWS_AS(RadialFourierFunction(d, -1.0, 1.0, {1.0}, {0.0}), DomainError);
  RadialFourierFunction u(d, 0.5, 1.0, {0.2, 0.1}, {0.3, 0.0});
  const double t = 0.37;
  CHECK(u(t) == doctest::Approx(1.0 + 0.2 * std::cos(t / 0.5) + 0.1 * std::cos(2 * t / 0.5) +
                                0.3 * std::sin(t / 0.5)));
  auto c = u.coefficients();
  REQUIRE(c.size() == 5);
  auto back = RadialFourierFunction::from_coefficients(d, 0.5, c);
  CHECK(back(1.3) == doctest::Approx(u(1.3)).epsilon(1e-15));
}

TEST_CASE("energy frozen values for (5,1)") {
  const Dims d(5, 1);
  const double tau0 = 1.0 / std::sqrt(3.0);
  const double vol = vol_of(d, tau0);
  const double e1 = (2.0 / 3.0) * (9.0 / 4.0) * vol;
  const double ec = (2.0 / 3.0) * (21.0 / 4.0) * (vol / 2.0);
  CHECK(energy_E(RadialFourierFunction::constant(d, tau0, 1.0)) == doctest::Approx(e1).epsilon(1e-13));
  CHECK(energy_E(cos_mode(d, tau0, 0.0, 1, 1.0)) == doctest::Approx(ec).epsilon(1e-13));
  CHECK(energy_E(cos_mode(d, tau0, 1.0, 1, 1.0)) == doctest::Approx(e1 + ec).epsilon(1e-13));
}

TEST_CASE("spectral energy matches quadrature of |u'|^2 + p_{1,0} u^2 for k=1") {
  std::mt19937_64 rng(7);
  for (int n : {3, 5, 8, 13}) {
    const Dims d(n, 1);
    const double tau = solve_tau0(d).tau0;
    const double p10 = (0.5 * n - 1) * (0.5 * n - 1);
    for (int trial = 0; trial < 5; ++trial) {
      auto u = random_positive(d, tau, 5, rng, 0.1);
      // independent trapezoid with analytic derivative
      const int N = 4096;
      double acc = 0.0;
      for (int i = 0; i < N; ++i) {
        const double t = u.period() * i / N;
        double du = 0.0;
        for (int m = 1; m <= u.order(); ++m) {
          const double w = m / tau;
          du += -u.cos_coeffs()[static_cast<std::size_t>(m - 1)] * w * std::sin(m * t / tau) +
                u.sin_coeffs()[static_cast<std::size_t>(m - 1)] * w * std::cos(m * t / tau);
        }
        acc += du * du + p10 * u(t) * u(t);
      }
      const double quad = (2.0 / (n - 2)) * acc * u.period() / N * vol_of(d, tau) / u.period();
      CHECK(std::abs(energy_E(u) - quad) <= 1e-10 * quad);
    }
  }
}

TEST_CASE("L^{2*} norm of constants and low-order expansions") {
  const Dims d(5, 1);
  const double tau0 = 1.0 / std::sqrt(3.0);
  const double vol = vol_of(d, tau0);
  const double p = 10.0 / 3.0;
  CHECK(lp_norm_2star(RadialFourierFunction::constant(d, tau0, 2.5)) ==
        doctest::Approx(2.5 * std::pow(vol, 1.0 / p)).epsilon(1e-13));

  // fourth-order Taylor of int (1 + eps cos)^p: <cos^2> = 1/2, <cos^4> = 3/8
  const double eps = 0.1;
  const double c2 = p * (p - 1) / 2, c4 = p * (p - 1) * (p - 2) * (p - 3) / 24;
  const double taylor = std::pow(vol * (1 + c2 * eps * eps * 0.5 + c4 * std::pow(eps, 4) * 3.0 / 8.0), 1.0 / p);
  const double got = lp_norm_2star(cos_mode(d, tau0, 1.0, 1, eps));
  CHECK(std::abs(got - taylor) <= 1e-5 * got);

  const double e = 1e-3;
  const double n2 = std::pow(lp_norm_2star(cos_mode(d, tau0, 1.0, 1, e)), 2);
  const double lead = std::pow(vol, 2 / p) + (p - 1) * std::pow(vol, 2 / p - 1) * (e * e * vol / 2);
  CHECK(std::abs(n2 - lead) <= 10 * std::pow(e, 4) * lead);
}

TEST_CASE("norm rejects sign changes unless absolute-value mode is on") {
  const Dims d(5, 1);
  auto u = cos_mode(d, 1.0, 0.2, 1, 1.0);
  CHECK_THROWS_AS(lp_norm_2star(u), DomainError);
  QuadratureConfig q;
  q.absoluteValue = true;
  CHECK(lp_norm_2star(u, q) > 0.0);
  q.maxPoints = 512;
  q.relTol = 1e-15;
  CHECK_THROWS_AS(lp_norm_2star(u, q), AccuracyError);
}

TEST_CASE("quadrature converges geometrically on trigonometric polynomials") {
  const Dims d(7, 2);
  const double tau = solve_tau0(d).tau0;
  RadialFourierFunction u(d, tau, 1.0, {0.3, 0.1, 0.05}, {0.1, 0.0, 0.02});
  const double p = d.two_star();
  QuadratureConfig q;
  q.initialPoints = 4;
  q.relTol = 1e-14;
  auto r = periodic_trapezoid([&](double t, double* out) { out[0] = std::pow(u(t), p); }, 1, u.period(), q);
  REQUIRE(r.relChanges.size() >= 3);
  for (std::size_t i = 1; i < r.relChanges.size(); ++i)
    if (r.relChanges[i - 1] > 1e-12) CHECK(r.relChanges[i] < 0.1 * r.relChanges[i - 1]);
  CHECK(r.relChanges.back() <= 1e-14);
}

TEST_CASE("Q at constants equals the Yamabe value") {
  for (auto d : {Dims(5, 1), Dims(6, 2), Dims(7, 3), Dims(20, 4)}) {
    const double tau0 = solve_tau0(d).tau0;
    const double vol = vol_of(d, tau0);
    const double p0 = build_spectral_polynomial(d).constant_term().to_double();
    const double expected = 2.0 / (d.n() - 2 * d.k()) * p0 * std::pow(vol, 2.0 * d.k() / d.n());
    const auto g = GeometryConstants::critical(d);
    CHECK(g.yamabe == doctest::Approx(expected).epsilon(1e-13));
    CHECK(q_functional(RadialFourierFunction::constant(d, tau0, 7.0)) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(g.vol == doctest::Approx(vol).epsilon(1e-13));
  }
}

TEST_CASE("Q near the constant is quartically close") {
  const Dims d(5, 1);
  const auto g = GeometryConstants::critical(d);
  auto u = cos_mode(d, g.tau0, 1.0, 1, 0.01);
  const double q = q_functional(u);
  CHECK(std::abs(q - g.yamabe) <= 1e-7 * g.yamabe);
  auto rep = deficit_and_distance(u);
  CHECK(rep.deficit < 1e-7);
  CHECK(rep.deficit > 0.0);
}

TEST_CASE("scale invariance") {
  std::mt19937_64 rng(11);
  for (auto d : {Dims(5, 1), Dims(6, 2), Dims(9, 4)}) {
    const double tau0 = solve_tau0(d).tau0;
    for (int i = 0; i < 10; ++i) {
      auto u = random_positive(d, tau0, 4, rng, 0.2);
      const double q = q_functional(u);
      for (double c : {1e-3, 1.0, 1e3}) CHECK(std::abs(q_functional(u.scaled(c)) - q) <= 1e-12 * q);
    }
  }
}

TEST_CASE("constants minimize Q over random positive truncated factors") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> order(1, 6);
  for (auto d : {Dims(5, 1), Dims(6, 2), Dims(7, 3)}) {
    const auto g = GeometryConstants::critical(d);
    for (int i = 0; i < 200; ++i) {
      const int M = order(rng);
      auto u = random_positive(d, g.tau0, M, rng, 0.45 / M);
      CHECK(q_functional(u) >= g.yamabe * (1 - 1e-12));
      CHECK(f_deficit(u) >= -1e-12 * g.yamabe);
    }
  }
}

TEST_CASE("F-form deficit agrees with direct subtraction at moderate amplitude") {
  std::mt19937_64 rng(5);
  const Dims d(6, 2);
  const double tau0 = solve_tau0(d).tau0;
  for (int i = 0; i < 10; ++i) {
    auto u = random_positive(d, tau0, 3, rng, 0.15);
    auto r = deficit_and_distance(u);
    CHECK(std::abs(r.deficit - r.quotientDeficit) <= 1e-9 * std::abs(r.deficit) + 1e-13);
    CHECK(r.infimumAgrees);
  }
}

TEST_CASE("deficit and distance basics") {
  const Dims d(5, 1);
  const double tau0 = solve_tau0(d).tau0;
  auto r0 = deficit_and_distance(RadialFourierFunction::constant(d, tau0, 1.0));
  CHECK(r0.deficit == doctest::Approx(0.0));
  CHECK(r0.dist == 0.0);
  CHECK(r0.energyDist == 0.0);

  const double w = std::pow(1.0 + 1.0 / (tau0 * tau0), 1);
  for (double xi : {1e-2, 1e-3, 1e-4}) {
    auto r = deficit_and_distance(cos_mode(d, tau0, 1.0, 1, xi));
    // ||xi cos||^2 / ||1 + xi cos||^2 = xi^2 w/2 / (1 + xi^2 w/2)
    const double expected = std::sqrt(xi * xi * w / 2 / (1 + xi * xi * w / 2));
    CHECK(r.dist == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.dist / xi == doctest::Approx(std::sqrt(w / 2)).epsilon(1e-3));
    CHECK(r.infimumAgrees);
  }
}

TEST_CASE("first variation: criticality at constants") {
  for (int n = 3; n <= 12; ++n)
    for (int k = 1; 2 * k < n; ++k) {
      const Dims d(n, k);
      const double tau0 = solve_tau0(d).tau0;
      auto g = q_gradient(RadialFourierFunction::constant(d, tau0, 1.0, 4));
      for (double x : g) CHECK(std::abs(x) < 1e-8);
    }
}

TEST_CASE("first variation matches finite differences") {
  std::mt19937_64 rng(99);
  for (auto d : {Dims(5, 1), Dims(6, 2), Dims(11, 3)}) {
    const double tau0 = solve_tau0(d).tau0;
    for (int i = 0; i < 5; ++i) {
      auto u = random_positive(d, tau0, 4, rng, 0.1);
      auto gc = gradient_check(u, 1e-5);
      CHECK(gc.maxRelativeError < 1e-6);
    }
    auto gc = gradient_check(cos_mode(d, tau0, 1.0, 2, 0.2), 1e-5);
    CHECK(gc.maxRelativeError < 1e-6);
  }
  const Dims d(5, 1);
  CHECK_THROWS_AS(gradient_check(RadialFourierFunction::constant(d, 1.0, 1.0), 1e-2), DomainError);
}

TEST_CASE("second variation matches finite differences of the gradient") {
  std::mt19937_64 rng(3);
  for (auto d : {Dims(5, 1), Dims(7, 2)}) {
    const double tau0 = solve_tau0(d).tau0;
    auto u = random_positive(d, tau0, 3, rng, 0.15);
    auto H = q_hessian(u);
    const auto base = u.coefficients();
    const std::size_t nb = base.size();
    const double h = 1e-5;
    double scale = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      auto plus = base, minus = base;
      plus[j] += h;
      minus[j] -= h;
      auto gp = q_gradient(RadialFourierFunction::from_coefficients(d, tau0, plus));
      auto gm = q_gradient(RadialFourierFunction::from_coefficients(d, tau0, minus));
      for (std::size_t i = 0; i < nb; ++i) {
        scale = std::max(scale, std::abs(H[i * nb + j]));
        worst = std::max(worst, std::abs(H[i * nb + j] - (gp[i] - gm[i]) / (2 * h)));
      }
    }
    CHECK(worst <= 1e-6 * scale);
  }
}

TEST_CASE("Hessian of F at 1: kernel and sign structure") {
  for (int n = 3; n <= 20; ++n)
    for (int k = 1; 2 * k < n; ++k) {
      auto rep = hessian_at_one(Dims(n, k), 6, 6);
      CHECK(rep.kernelDimension == 3);
      REQUIRE(rep.kernelModes.size() == 3);
      CHECK(rep.kernelModes[0].parity == Parity::Constant);
      CHECK(rep.kernelModes[1].mode == ModeIndex{1, 0});
      CHECK(rep.kernelModes[2].mode == ModeIndex{1, 0});
      for (const auto& e : rep.hessianDiagonal)
        if (!e.kernel) CHECK(e.value > 0.0);
    }
  auto rep = hessian_at_one(Dims(5, 1), 3, 3);
  for (const auto& e : rep.hessianDiagonal) {
    if (e.mode == ModeIndex{1, 0}) CHECK(std::abs(e.value) <= 1e-12);
    if (e.mode == ModeIndex{2, 0}) CHECK(e.value == doctest::Approx(2 * (2.0 / 3) * (57.0 / 4 - 21.0 / 4)));
    if (e.mode == ModeIndex{0, 1}) CHECK(e.value == doctest::Approx(2 * (2.0 / 3) * (25.0 / 4 - 21.0 / 4)));
  }
}

TEST_CASE("Hessian diagonal agrees with second differences of F and with D^2 Q") {
  for (auto d : {Dims(5, 1), Dims(6, 2), Dims(9, 4)}) {
    const auto g = GeometryConstants::critical(d);
    auto rep = hessian_at_one(d, 4, 1);
    auto one = RadialFourierFunction::constant(d, g.tau0, 1.0, 4);
    auto Hq = q_hessian(one);
    const std::size_t nb = one.coefficient_count();
    const double n1 = std::pow(lp_norm_2star(one), 2);
    const double gap = 2.0 * 2.0 / (d.n() - 2 * d.k()) * alpha(d, {1, 0}, g.tau0);
    for (const auto& e : rep.hessianDiagonal) {
      if (e.mode.j != 0 || e.mode.m == 0) continue;
      const double norm = std::sqrt(g.vol / 2);
      const double s = 1e-3;
      auto v = cos_mode(d, g.tau0, 1.0, e.mode.m, s / norm, 4);
      const double fd = 2 * f_deficit(v) / (s * s);
      CHECK(fd == doctest::Approx(e.value).epsilon(1e-5).scale(gap));
      const auto i = static_cast<std::size_t>(e.mode.m);
      CHECK(Hq[i * nb + i] * n1 / (g.vol / 2) == doctest::Approx(e.value).epsilon(1e-8).scale(gap));
    }
  }
}

TEST_CASE("conformal norms") {
  const Dims d(6, 2);
  const auto g = GeometryConstants::critical(d);
  auto one = RadialFourierFunction::constant(d, g.tau0, 1.0);
  auto z = conformal_norms(one, one);
  CHECK(z.norm2star == 0.0);
  CHECK(z.normStar == 0.0);

  const double eps = 0.03;
  auto u = cos_mode(d, g.tau0, 1.0, 1, eps);
  auto nrm = conformal_norms(u, one);
  const double alpha10 = alpha(d, {1, 0}, g.tau0);
  CHECK(nrm.normStar * nrm.normStar == doctest::Approx(eps * eps * alpha10 * g.vol / 2).epsilon(1e-12));
  CHECK(nrm.normStar * nrm.normStar ==
        doctest::Approx(energy_E(cos_mode(d, g.tau0, 0.0, 1, eps)) * (d.n() - 2 * d.k()) / 2.0).epsilon(1e-12));

  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    auto a = random_positive(d, g.tau0, 3, rng, 0.3);
    auto b = random_positive(d, g.tau0, 2, rng, 0.3);
    auto c = random_positive(d, g.tau0, 4, rng, 0.3).scaled(1.7);
    auto ab = conformal_norms(a, b), bc = conformal_norms(b, c), ac = conformal_norms(a, c);
    CHECK(ac.norm2star <= ab.norm2star + bc.norm2star + 1e-12);
    CHECK(ac.normStar <= ab.normStar + bc.normStar + 1e-12);
  }
}
