// Total Q-curvature functional on M = S^1(tau) x S^{n-1} restricted to
// conformal factors that depend on the circle variable only:
//
//   E(u) = 2/(n-2k) int u P_k u,   Q(u) = E(u) / ||u||_{2*}^2,
//   F(u) = E(u) - Y ||u||_{2*}^2,  Y = Q(1).
//
// P_k is diagonal on the Fourier modes, so E is exact in the coefficients;
// only the L^{2*} norm needs quadrature.
#pragma once

#include "qcurve/dims.hpp"
#include "qcurve/quadrature.hpp"
#include "qcurve/spectral.hpp"

#include <cstdint>
#include <vector>

namespace qcurve {

class RadialFourierFunction {
 public:
  // u(t) = mean + sum_m a_m cos(m t / tau) + b_m sin(m t / tau), m = 1..M, M >= 1.
  RadialFourierFunction(const Dims& dims, double tau, double mean, std::vector<double> cosCoeffs,
                        std::vector<double> sinCoeffs);

  static RadialFourierFunction constant(const Dims& dims, double tau, double c, int order = 1);
  // coefficient vector layout: [mean, a_1..a_M, b_1..b_M]
  static RadialFourierFunction from_coefficients(const Dims& dims, double tau, const std::vector<double>& coeffs);
  std::vector<double> coefficients() const;
  std::size_t coefficient_count() const { return 2 * cos_.size() + 1; }

  const Dims& dims() const { return dims_; }
  double tau() const { return tau_; }
  double mean() const { return mean_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  int order() const { return static_cast<int>(cos_.size()); }
  double period() const;

  double operator()(double t) const;
  double min_on_grid(std::size_t points) const;

  RadialFourierFunction scaled(double c) const;
  RadialFourierFunction with_order(int order) const;  // zero-pads or truncates
  RadialFourierFunction oscillating_part() const;     // u - mean
  friend RadialFourierFunction operator+(const RadialFourierFunction& u, const RadialFourierFunction& v);
  friend RadialFourierFunction operator-(const RadialFourierFunction& u, const RadialFourierFunction& v);

 private:
  Dims dims_;
  double tau_;
  double mean_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

struct GeometryConstants {
  Dims dims;
  double tau0;          // circle radius (the critical radius for critical())
  double vol;           // 2 pi tau0 |S^{n-1}|
  double omegaNminus1;  // |S^{n-1}|
  double yamabe;        // Q(1), evaluated through the quotient
  double sobolevSharp;  // S_{n,k}

  static GeometryConstants at(const Dims& dims, double tau, const QuadratureConfig& quad = {});
  static GeometryConstants critical(const Dims& dims, const QuadratureConfig& quad = {});
};

double energy_E(const RadialFourierFunction& u);
double lp_norm_2star(const RadialFourierFunction& u, const QuadratureConfig& quad = {});
double q_functional(const RadialFourierFunction& u, const QuadratureConfig& quad = {});

// Spectral W^{k,2} norm with weight (1 + m^2 tau^-2)^k on each circle mode.
double wk2_norm(const RadialFourierFunction& u);

struct DeficitReport {
  double deficit;         // Q(u) - Y, evaluated as F(u) / ||u||^2
  double quotientDeficit; // Q(u) - Y by direct subtraction
  double fDeficit;        // F(u) = E(u) - Y ||u||^2
  double normSquared;     // ||u||_{2*}^2
  double dist;            // ||u - mean||_{k,2} / ||u||_{k,2}
  double energyDist;      // E(u - mean)^{1/2}
  double distInfimum;     // golden-section min over c in [mean/2, 2 mean] of ||u - c||_{k,2}/||u||_{k,2}
  bool infimumAgrees;     // |distInfimum - dist| <= 1e-6 dist (or both below 1e-15)
};

// F(u) via u = mean (1 + rho) and expm1/log1p, avoiding cancellation near constants.
double f_deficit(const RadialFourierFunction& u, const QuadratureConfig& quad = {});
DeficitReport deficit_and_distance(const RadialFourierFunction& u, const QuadratureConfig& quad = {});

// Closed-form first variation, one entry per coefficient direction.
std::vector<double> q_gradient(const RadialFourierFunction& u, const QuadratureConfig& quad = {});
// Closed-form second variation over the coefficient basis, row-major.
std::vector<double> q_hessian(const RadialFourierFunction& u, const QuadratureConfig& quad = {});

struct GradientCheck {
  std::vector<double> closedForm;
  std::vector<double> finiteDifference;
  double maxAbsoluteError;
  double maxRelativeError;  // max |closed - fd| / max |closed|
};
GradientCheck gradient_check(const RadialFourierFunction& u, double h, const QuadratureConfig& quad = {});

enum class Parity { Constant, Cos, Sin, CosSinPair };

struct KernelMode {
  ModeIndex mode;
  Parity parity;
};

struct HessianEntry {
  ModeIndex mode;
  int parityCount;       // independent circle functions for this m (1 or 2)
  BigInt multiplicity;   // spherical multiplicity N_j
  double value;          // d^2/ds^2 F(1 + s v) for L^2-normalized v
  bool kernel;
};

struct VariationReport {
  Dims dims;
  double value;                          // Q(1)
  std::vector<double> gradient;          // DQ(1) on the j=0 coefficient basis up to mMax
  std::vector<HessianEntry> hessianDiagonal;
  std::vector<KernelMode> kernelModes;
  BigInt kernelDimension;
};

VariationReport hessian_at_one(const Dims& dims, int mMax = 10, int jMax = 10, const QuadratureConfig& quad = {});

struct ConformalNorms {
  double norm2star;  // ||u - v||_{L^{2*}}
  double normStar;   // (int (u-v) P_k (u-v))^{1/2}
};
ConformalNorms conformal_norms(const RadialFourierFunction& u, const RadialFourierFunction& v,
                               const QuadratureConfig& quad = {});

}  // namespace qcurve
