// Spectral data of the GJMS operator P_k on S^1(tau) x S^{n-1}.
//
// In the variable Y = X^2 = m^2 tau^-2 the circle modes see the polynomial
//   P_k(Y) = prod_{l=1}^{k} (Y + (n/2 + k - 2l)^2),
// and the mode (m, j) has eigenvalue
//   alpha_{m,j}(tau) = prod_{l=1}^{k} (m^2 tau^-2 + (j + n/2 + k - 2l)^2).
// tau0 is the radius at which alpha_{1,0} = (n+2k)/(n-2k) p_{k,0}.
#pragma once

#include "qcurve/dims.hpp"
#include "qcurve/exact.hpp"

#include <cstdint>
#include <vector>

namespace qcurve {

struct ModeIndex {
  int m = 0;
  int j = 0;
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

// N_j = (2j+n-2)(j+n-3)!/((n-2)! j!), the dimension of degree-j harmonics on S^{n-1}.
BigInt spherical_multiplicity(int n, int j);

class SpectralPolynomial {
 public:
  explicit SpectralPolynomial(const Dims& dims);

  const Dims& dims() const { return dims_; }
  // p_{k,0..k}, ascending in Y
  const std::vector<ExactScalar>& coeffs() const { return coeffs_; }
  const ExactScalar& constant_term() const { return coeffs_.front(); }
  // (n+2k)/(n-2k) p_{k,0}
  ExactScalar kernel_target() const;

  ExactScalar evaluate(const ExactScalar& y) const;           // expanded form
  ExactScalar evaluate_factored(const ExactScalar& y) const;  // product form
  double evaluate(double y) const;                            // product form in binary64

 private:
  Dims dims_;
  std::vector<ExactScalar> coeffs_;
};

SpectralPolynomial build_spectral_polynomial(const Dims& dims);

double alpha(const Dims& dims, ModeIndex mode, double tau);

struct Tau0Result {
  Dims dims;
  double y;         // tau0^-2
  double tau0;
  double residual;  // |P_k(y) - target| / target, evaluated exactly
};

Tau0Result solve_tau0(const Dims& dims, double tol = 1e-14);

// Rational interval [lower, upper] for y = tau0^-2 with P_k(lower) <= target <= P_k(upper)
// established in exact arithmetic.
struct Tau0Certificate {
  ExactScalar lower;
  ExactScalar upper;
  int iterations;
};
Tau0Certificate certify_tau0(const Dims& dims, const ExactScalar& width);

struct Tau0Bounds {
  double lower;
  double upper;
  double tau0;
  bool holds;
};
Tau0Bounds tau0_bounds_check(const Dims& dims, double slack = 1e-12);

struct EigenEntry {
  ModeIndex mode;
  double value;
};

struct EigenvalueGapReport {
  Dims dims;
  double tau0;
  double kernelValue;              // (n+2k)/(n-2k) p_{k,0}
  double kernelRelativeError;      // |alpha_{1,0}(tau0) - kernelValue| / kernelValue
  std::vector<EigenEntry> table;   // ascending
  bool increasingInM;
  bool increasingInJ;
  bool kernelUnique;               // kernelValue attained only at (1,0)
  double alpha01OverAlpha10;
};

EigenvalueGapReport eigenvalue_gap_report(const Dims& dims, int mMax = 50, int jMax = 50);

// min over m,j <= cap of alpha_{m,j}(tau0) / (1 + m^{2k} + j^{2k})
double coercivity_constant(const Dims& dims, int cap = 50);

}  // namespace qcurve
