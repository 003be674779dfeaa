// spectral_core: exact polynomial, eigenvalues, tau0 and ordering facts.
#include <doctest.h>

#include "qcurve/error.hpp"
#include "qcurve/spectral.hpp"

#include <cmath>
#include <random>

using namespace qcurve;

namespace {

// Oracle: p_{k,m} is the elementary symmetric sum e_{k-m} of the squared shifts,
// computed here by brute-force subset enumeration.
std::vector<ExactScalar> oracle_coeffs(int n, int k) {
  std::vector<ExactScalar> sq;
  for (int l = 1; l <= k; ++l) {
    ExactScalar s(n + 2 * k - 4 * l, 2);
    sq.push_back(s * s);
  }
  std::vector<ExactScalar> e(static_cast<std::size_t>(k + 1), ExactScalar(0));
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    ExactScalar prod(1);
    int size = 0;
    for (int l = 0; l < k; ++l)
      if (mask & (1u << l)) { prod *= sq[static_cast<std::size_t>(l)]; ++size; }
    e[static_cast<std::size_t>(size)] += prod;
  }
  std::vector<ExactScalar> p(static_cast<std::size_t>(k + 1));
  for (int m = 0; m <= k; ++m) p[static_cast<std::size_t>(m)] = e[static_cast<std::size_t>(k - m)];
  return p;
}

// Oracle for k = 2: quadratic formula on (y + a)(y + b) = T.
double oracle_y_k2(int n) {
  const double a = std::pow(0.5 * n, 2), b = std::pow(0.5 * n - 2, 2);
  const double T = (n + 4.0) / (n - 4.0) * a * b;
  return 0.5 * (-(a + b) + std::sqrt((a - b) * (a - b) + 4 * T));
}

}  // namespace

TEST_CASE("dims validation names the violated constraint") {
  CHECK_THROWS_AS(Dims(4, 2), DomainError);
  CHECK_THROWS_WITH(Dims(4, 2), doctest::Contains("n > 2k"));
  CHECK_THROWS_AS(Dims(5, 0), DomainError);
  CHECK(Dims(5, 2).critical_exponent() == ExactScalar(10));
  CHECK(Dims(6, 2).critical_exponent() == ExactScalar(6));
}

TEST_CASE("exact scalar keeps lowest terms") {
  ExactScalar x(6, -4);
  CHECK(x.numerator() == -3);
  CHECK(x.denominator() == 2);
  CHECK_THROWS_AS(ExactScalar(1, 0), DomainError);
  CHECK(ExactScalar::from_double(0.375) == ExactScalar(3, 8));
  CHECK(ExactScalar::from_double(-3.0e-300).to_double() == -3.0e-300);
}

TEST_CASE("frozen polynomial expansions") {
  auto p51 = build_spectral_polynomial(Dims(5, 1)).coeffs();
  REQUIRE(p51.size() == 2);
  CHECK(p51[0] == ExactScalar(9, 4));
  CHECK(p51[1] == ExactScalar(1));

  auto p62 = build_spectral_polynomial(Dims(6, 2)).coeffs();
  REQUIRE(p62.size() == 3);
  CHECK(p62[0] == ExactScalar(9));
  CHECK(p62[1] == ExactScalar(10));
  CHECK(p62[2] == ExactScalar(1));

  auto p52 = build_spectral_polynomial(Dims(5, 2)).coeffs();
  CHECK(p52[0] == ExactScalar(25, 16));
  CHECK(p52[1] == ExactScalar(13, 2));
  CHECK(p52[2] == ExactScalar(1));
}

TEST_CASE("expansion matches subset-sum oracle and has positive coefficients") {
  for (int k = 1; k <= 8; ++k)
    for (int n = 2 * k + 1; n <= 2 * k + 12; ++n) {
      auto poly = build_spectral_polynomial(Dims(n, k));
      auto ref = oracle_coeffs(n, k);
      REQUIRE(poly.coeffs().size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(poly.coeffs()[i] == ref[i]);
        CHECK(poly.coeffs()[i].sign() > 0);
      }
      CHECK(poly.coeffs().back() == ExactScalar(1));
    }
}

TEST_CASE("factored and expanded forms agree exactly at random rationals") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long long> num(-10000, 10000), den(1, 997);
  for (int k : {1, 2, 3, 5, 9}) {
    auto poly = build_spectral_polynomial(Dims(2 * k + 3, k));
    for (int i = 0; i < 20; ++i) {
      ExactScalar y(num(rng), den(rng));
      CHECK(poly.evaluate(y) == poly.evaluate_factored(y));
    }
  }
}

TEST_CASE("polynomial strictly increasing on [0, inf)") {
  for (int k = 1; k <= 6; ++k) {
    auto poly = build_spectral_polynomial(Dims(2 * k + 1, k));
    ExactScalar prev = poly.evaluate(ExactScalar(0));
    for (int i = 1; i <= 200; ++i) {
      ExactScalar cur = poly.evaluate(ExactScalar(i, 10));
      CHECK(prev < cur);
      prev = cur;
    }
  }
}

TEST_CASE("alpha frozen values") {
  const Dims d(5, 1);
  CHECK(alpha(d, {0, 0}, 0.3) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(alpha(d, {0, 0}, 7.0) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(alpha(d, {1, 0}, 1.0 / std::sqrt(3.0)) == doctest::Approx(21.0 / 4).epsilon(1e-14));
  CHECK(alpha(d, {0, 1}, 0.9) == doctest::Approx(25.0 / 4).epsilon(1e-15));
  CHECK_THROWS_AS(alpha(d, {1, 0}, 0.0), DomainError);
  CHECK_THROWS_AS(alpha(d, {1, 0}, -1.0), DomainError);
}

TEST_CASE("alpha at j=0 equals P_k(m^2 tau^-2)") {
  for (int k = 1; k <= 5; ++k) {
    const Dims d(2 * k + 4, k);
    auto poly = build_spectral_polynomial(d);
    for (int m = 0; m <= 6; ++m)
      for (double tau : {0.3, 0.7, 1.9}) {
        double y = m * m / (tau * tau);
        double ref = poly.evaluate(ExactScalar::from_double(y)).to_double();
        CHECK(std::abs(alpha(d, {m, 0}, tau) - ref) <= 1e-14 * ref);
      }
  }
}

TEST_CASE("alpha strictly decreasing in tau for m >= 1") {
  const Dims d(9, 3);
  for (int m = 1; m <= 4; ++m)
    for (int j = 0; j <= 3; ++j) {
      double prev = alpha(d, {m, j}, 0.1);
      for (int i = 2; i <= 40; ++i) {
        double cur = alpha(d, {m, j}, 0.1 * i);
        CHECK(cur < prev);
        prev = cur;
      }
    }
}

TEST_CASE("solve_tau0 frozen values") {
  auto r51 = solve_tau0(Dims(5, 1));
  CHECK(r51.tau0 == doctest::Approx(0.5773502691896258).epsilon(1e-15));
  CHECK(r51.y == 3.0);

  auto r62 = solve_tau0(Dims(6, 2));
  CHECK(std::abs(r62.y - 2.81024967590665439) <= 1e-12);
  CHECK(std::abs(r62.tau0 - 0.59652348551853752) <= 1e-12);
  CHECK(r62.residual <= 1e-14);

  auto r52 = solve_tau0(Dims(5, 2));
  CHECK(std::abs(r52.y - 1.55234317807463651) <= 1e-12);
  CHECK(std::abs(r52.tau0 - 0.80261289190117730) <= 1e-12);

  CHECK_THROWS_AS(solve_tau0(Dims(5, 1), 0.0), DomainError);
  CHECK_THROWS_AS(solve_tau0(Dims(5, 1), 1e-3), DomainError);
}

TEST_CASE("solve_tau0 agrees with quadratic-formula oracle for k=2") {
  for (int n = 5; n <= 40; ++n) {
    auto r = solve_tau0(Dims(n, 2));
    CHECK(std::abs(r.y - oracle_y_k2(n)) <= 1e-12 * oracle_y_k2(n));
  }
}

TEST_CASE("tau0 residual, bracket and bounds over the full grid") {
  for (int n = 3; n <= 40; ++n)
    for (int k = 1; 2 * k < n; ++k) {
      const Dims d(n, k);
      auto r = solve_tau0(d);
      CHECK(r.residual <= 1e-13);
      if (k == 1) {
        CHECK(r.y == n - 2);
      } else {
        CHECK(r.y >= n - 2 * k);
        CHECK(r.y <= n + 2 * k - 4);
      }
      auto b = tau0_bounds_check(d);
      CHECK(b.holds);
    }
  auto b51 = tau0_bounds_check(Dims(5, 1));
  CHECK(b51.lower == doctest::Approx(b51.upper).epsilon(1e-15));
  auto b62 = tau0_bounds_check(Dims(6, 2));
  CHECK(b62.lower == doctest::Approx(0.4082483).epsilon(1e-7));
  CHECK(b62.upper == doctest::Approx(0.7071068).epsilon(1e-7));
  CHECK(tau0_bounds_check(Dims(11, 5)).holds);
}

TEST_CASE("certified tau0 interval contains the binary64 root") {
  for (auto d : {Dims(6, 2), Dims(9, 3), Dims(13, 6)}) {
    auto cert = certify_tau0(d, ExactScalar(1, 1000000000000LL));
    auto r = solve_tau0(d);
    CHECK(cert.lower.to_double() <= r.y + 1e-12);
    CHECK(r.y - 1e-12 <= cert.upper.to_double());
    auto poly = build_spectral_polynomial(d);
    CHECK(poly.evaluate(cert.lower) <= poly.kernel_target());
    CHECK(poly.kernel_target() <= poly.evaluate(cert.upper));
  }
}

TEST_CASE("eigenvalue gap report") {
  auto rep = eigenvalue_gap_report(Dims(5, 1), 3, 3);
  REQUIRE(rep.table.size() == 16);
  CHECK(rep.table[0].mode == ModeIndex{0, 0});
  CHECK(rep.table[0].value == doctest::Approx(2.25));
  CHECK(rep.table[1].mode == ModeIndex{1, 0});
  CHECK(rep.table[1].value == doctest::Approx(5.25));
  CHECK(rep.table[2].mode == ModeIndex{0, 1});
  CHECK(rep.table[2].value == doctest::Approx(6.25));
  CHECK(rep.increasingInM);
  CHECK(rep.increasingInJ);
  CHECK(rep.kernelUnique);
  for (std::size_t i = 1; i < rep.table.size(); ++i) CHECK(rep.table[i - 1].value <= rep.table[i].value);

  CHECK(eigenvalue_gap_report(Dims(6, 2), 3, 3).alpha01OverAlpha10 > 1.0);
  CHECK_THROWS_AS(eigenvalue_gap_report(Dims(6, 2), 1, 3), DomainError);

  for (int n = 3; n <= 20; ++n)
    for (int k = 1; 2 * k < n; ++k) {
      auto g = eigenvalue_gap_report(Dims(n, k), 10, 10);
      CHECK(g.kernelRelativeError <= 1e-12);
      CHECK(g.kernelUnique);
      CHECK(g.alpha01OverAlpha10 > 1.0);
      CHECK(g.increasingInM);
      CHECK(g.increasingInJ);
    }
}

TEST_CASE("spherical multiplicities") {
  // S^2: 2j+1; S^3: (j+1)^2
  for (int j = 0; j <= 10; ++j) {
    CHECK(spherical_multiplicity(3, j) == 2 * j + 1);
    CHECK(spherical_multiplicity(4, j) == (j + 1) * (j + 1));
  }
  CHECK(spherical_multiplicity(5, 1) == 5);  // coordinate functions on S^4
  CHECK(spherical_multiplicity(5, 2) == 14);
}

TEST_CASE("coercivity constant is positive") {
  for (auto d : {Dims(5, 1), Dims(6, 2), Dims(9, 4)}) CHECK(coercivity_constant(d) > 0.0);
}
