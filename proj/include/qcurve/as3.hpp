// Fourth-order Q-curvature and the shifted Paneitz operator on Einstein
// products M^m x F, with F a round sphere S^l or (CP^l, Fubini-Study).
// Everything is exact in the Einstein constant lambda of the base.
#pragma once

#include "qcurve/exact.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcurve {

enum class FiberKind { Sphere, ComplexProjective };

// How the fiber Laplacian acts on the test eigenfunction.  Geometric: Delta v = -mu v.
// Printed: Delta v = +mu v, the substitution behind the printed coefficient tables.
enum class LaplacianConvention { Printed, Geometric };

std::string to_string(FiberKind kind);
std::string to_string(LaplacianConvention conv);

struct Fiber {
  FiberKind kind;
  int ell;

  int real_dimension() const;
  ExactScalar einstein_constant() const;  // l-1 or 2(l+1)
  ExactScalar scalar_curvature() const;   // l(l-1) or 4l(l+1)
  ExactScalar ricci_norm_sq() const;      // l(l-1)^2 or 8l(l+1)^2
  ExactScalar test_eigenvalue() const;    // mu: 2(l+1) or 8l+16
};

struct EinsteinProductSpec {
  int baseDim;
  Fiber fiber;

  int total_dimension() const { return baseDim + fiber.real_dimension(); }
  // throws DomainError: baseDim >= 1, l >= 2, total dimension >= 5
  void validate() const;
};

struct ExactQuadratic {
  ExactScalar a, b, c;  // a lambda^2 + b lambda + c
  ExactScalar evaluate(const ExactScalar& lambda) const { return (a * lambda + b) * lambda + c; }
  double evaluate(double lambda) const;
};

// Q_{h,2} as a quadratic in lambda (the Delta R term vanishes: curvatures are constant).
ExactQuadratic q2_of_product(const EinsteinProductSpec& spec);

struct LambdaQuadratic {
  ExactScalar a, b, c;
  ExactScalar discriminant;
  std::optional<std::pair<double, double>> roots;  // (lambda_-, lambda_+) when discriminant >= 0
  double rootResidual = 0.0;  // max |q(root)| / max(|a|,|b|,|c|)
};

// (P_{h,2} - (n+4)/2 Q_{h,2}) v = q(lambda) v for v = 1 (x) v~.
LambdaQuadratic shifted_paneitz_eigenvalue(const EinsteinProductSpec& spec,
                                           LaplacianConvention conv = LaplacianConvention::Printed);

// binary64 evaluation straight from the curvature formulas, no exact coefficients
double q2_shadow(const EinsteinProductSpec& spec, double lambda);
double shifted_paneitz_shadow(const EinsteinProductSpec& spec, double lambda,
                              LaplacianConvention conv = LaplacianConvention::Printed);

enum class RootPattern { OppositeSigns, BothNegative, BothPositive, ZeroRoot, NoRealRoots, Degenerate };
std::string to_string(RootPattern p);

// sign pattern from exact data (discriminant, c/a and -b/a)
RootPattern root_pattern(const LambdaQuadratic& q);
// expected pattern: opposite signs for S^l, l <= 5 and CP^l, l <= 3; both negative beyond
RootPattern predicted_pattern(FiberKind kind, int ell);

struct As3Row {
  int m;
  ExactScalar discriminant;
  bool discriminantPositive;
  std::optional<double> lambdaMinus, lambdaPlus;
  RootPattern pattern;
};

struct As3Verdict {
  FiberKind fiber;
  int ell;
  LaplacianConvention convention;
  RootPattern predicted;
  std::vector<As3Row> rows;
  std::optional<int> leastStableM;  // least m such that every m' >= m in range shows the predicted pattern
};

As3Verdict as3_verdict(FiberKind fiber, int ell, int mMin, int mMax,
                       LaplacianConvention conv = LaplacianConvention::Printed, int jobs = 1);

// Printed leading forms of a, b, c (each up to O(1/m)) and of b^2 - 4ac (up to O(m)).
struct PrintedLeading {
  ExactScalar a, b, c, discriminant;
};
PrintedLeading printed_leading(FiberKind kind, int ell, int m);

struct AsymptoticCheck {
  std::string quantity;                     // "a", "b", "c", "disc"
  std::vector<std::pair<int, double>> scaled;  // m*(exact - printed), or (exact - printed)/m for disc
  double earlyMax;                          // max |scaled| over 100 <= m <= 1000
  double lateMax;                           // max |scaled| over 1000 < m <= mMax
  bool bounded;                             // lateMax <= 2 earlyMax + 1e-9
  double offsetAtMax;                       // exact - printed at the largest m (disc: divided by m)
};
std::vector<AsymptoticCheck> asymptotic_consistency(FiberKind kind, int ell,
                                                    LaplacianConvention conv = LaplacianConvention::Printed,
                                                    int mMax = 10000);

struct CubicMonteCarlo {
  int ell;
  double integral;       // estimate of int_{S^l} v~^3
  double standardError;
  std::size_t samples;
  bool nonzero;          // |integral| >= 3 standardError
};
// v~ = x1 x2 + x2 x3 + x3 x1 on S^l, uniform samples from normalized Gaussians
CubicMonteCarlo cubic_integral_monte_carlo(int ell, std::size_t samples = 1000000, std::uint64_t seed = 0);

}  // namespace qcurve
