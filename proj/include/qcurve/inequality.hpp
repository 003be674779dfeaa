// Inequalities on S^1(tau0) x S^{n-1}: comparison with the sharp Sobolev
// constant, the Gamma-ratio (Beckner-type) bound, the quartic constant and
// positivity of the periodized Green's kernel.
#pragma once

#include "qcurve/dims.hpp"

#include <map>
#include <string>
#include <vector>

namespace qcurve {

struct InequalityVerdict {
  std::string name;
  std::map<std::string, double> parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool holds = false;   // margin > -1e-10 max(|lhs|, |rhs|)
  bool equalityCase = false;
  bool strict() const { return holds && !equalityCase; }
};

// lhs <= rhs, equality within 1e-10 relative
InequalityVerdict make_verdict(std::string name, std::map<std::string, double> parameters, double lhs, double rhs);

// Psi_k(n) = (p_{k,0} Gamma(n/2-k)/Gamma(n/2+k))^{n/2},
// Phi_k(n) = sqrt(n-2k)/(2 sqrt(pi)) Gamma(n/2)/Gamma((n+1)/2); n may be real.
double log_psi_k(double n, int k, double exponent);
double log_psi_k(double n, int k);
double log_phi_k(double n, int k);

struct StrictBindingReport {
  InequalityVerdict quotient;         // Q(1) < 2/(n-2k) S_{n,k}
  InequalityVerdict reduced;          // Psi_k(n) < Phi_k(n)
  InequalityVerdict literal;          // Q(1) < S_{n,k}, informational
  InequalityVerdict reducedExponent;  // (p0 Gamma/Gamma)^{n/(2k)} < Phi_k(n), informational
};
StrictBindingReport strict_binding(const Dims& dims);

// Gamma(a) Gamma(b+l) / (Gamma(b) Gamma(a+l)) <= P_k(tau0^-2 l^2) / p_{k,0},
// a = (n-2k)/(2n), b = (n+2k)/(2n)
InequalityVerdict beckner_gap(const Dims& dims, int ell);
// d/dl ln Phi(l) < 2k/(n l), derivative by central differences
InequalityVerdict beckner_derivative_step(const Dims& dims, double ell);
// 2k/(n l) <= d/dl ln Lambda(l)
InequalityVerdict lambda_derivative_step(const Dims& dims, double ell);

struct QuarticConstant {
  double c;
  bool positive;
  InequalityVerdict alphaIneq;   // alpha_{2,0} > (2 2* - 1)/(2* + 1) alpha_{1,0}
  InequalityVerdict convexity;   // alpha_{2,0} >= (2 - 1/(2*-1)) alpha_{1,0}
  // P_k(2 tau0^-1) >= 2 P_k(tau0^-1) - P_k(0) read literally in Y = X^2
  InequalityVerdict printedIntermediateY;
  double printedIntermediateYValue;  // P_k(2 tau0^-1) in Y, to be compared with alpha_{2,0}
};
QuarticConstant quartic_constant_c(const Dims& dims);

struct GreensPoint {
  double t;
  std::vector<double> omega;  // unit vector in R^n
  double s;
  std::vector<double> eta;    // unit vector in R^n
};

struct GreensValue {
  double value;      // without the positive constant c_{n,k}
  double tailBound;  // bound on the omitted terms
  int terms;         // summation window is m = -terms..terms
};

// Adaptive truncation: starts at `truncation` and grows until tailBound <= tailTol * value.
std::vector<GreensValue> greens_kernel(const Dims& dims, double tau, const std::vector<GreensPoint>& points,
                                       int truncation = 1, double tailTol = 1e-10);

}  // namespace qcurve
