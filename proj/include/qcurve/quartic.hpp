// Degenerate direction at the critical radius: the family
//   u = 1 + xi (cos(t/tau0) + b cos(2t/tau0))
// whose deficit decays like the fourth power of its distance to the constants.
#pragma once

#include "qcurve/dims.hpp"
#include "qcurve/quadrature.hpp"

#include <vector>

namespace qcurve {

struct DeficitSample {
  double xi;
  double b;
  double deficit;      // Q(u) - Y
  double dist;         // ||u - mean||_{k,2} / ||u||_{k,2}
  double energyDist;   // E(u - mean)^{1/2}
  double normSquared;  // ||u||_{2*}^2, the F-to-deficit conversion factor
  double yamabe;       // Y at the same radius
};

enum class SequenceKind {
  Degenerate,      // b = b*(xi)
  FirstModeOnly,   // b = 0
  SecondModeOnly,  // u = 1 + xi cos(2t/tau0), a positive Hessian direction
};

enum class DistanceMetric { Dist, EnergyDist };

const char* to_string(SequenceKind kind);
const char* to_string(DistanceMetric metric);

// The amplitude that cancels the square in b of the quartic expansion.
double optimal_b(const Dims& dims, double xi);

// 0.1 * 2^{-i/2}, i = 0..13
std::vector<double> default_xi_grid();

std::vector<DeficitSample> probe_sequence(const Dims& dims, const std::vector<double>& xiGrid, SequenceKind kind,
                                          int jobs = 1, const QuadratureConfig& quad = {});
std::vector<DeficitSample> degenerate_sequence(const Dims& dims, const std::vector<double>& xiGrid, int jobs = 1,
                                               const QuadratureConfig& quad = {});

struct ExponentFit {
  std::vector<DeficitSample> samples;  // the samples that passed the floor
  double exponent;
  double prefactor;  // exp(intercept)
  double r2;
  double xiMin;
  double xiMax;
};

// Least squares of log(deficit) on log(metric) over samples with deficit > 1e3 eps Y.
ExponentFit fit_exponent(const std::vector<DeficitSample>& samples, DistanceMetric metric = DistanceMetric::EnergyDist);

struct Frank3Check {
  double xi;
  double b;
  double quadrature;  // F(u) from the L^{2*} quadrature
  double analytic;    // fourth-order Taylor assembly with exact trig moments
  double absDiscrepancy;
  double relDiscrepancy;  // absDiscrepancy / |analytic|
};
Frank3Check frank3_expansion_check(const Dims& dims, double xi, double b, const QuadratureConfig& quad = {});

struct Frank3Order {
  Frank3Check coarse;  // at xi
  Frank3Check fine;    // at xi / 2
  double ratio;        // coarse.absDiscrepancy / fine.absDiscrepancy
};
Frank3Order frank3_order_check(const Dims& dims, double xi, double b, const QuadratureConfig& quad = {});

struct PhiMoments {
  double vol;
  double phi4;     // int phi^4 by quadrature
  double phi2Sq;   // (int phi^2)^2 by quadrature
  double relErr4;  // against 3 vol / 8
  double relErr2;  // against vol^2 / 4
};
PhiMoments phi_moments(const Dims& dims, const QuadratureConfig& quad = {});

struct BMinimum {
  double xi;
  double b;          // numerical minimizer of the deficit in b
  double deficit;
  double bStar;
  double deficitAtBStar;
};
BMinimum minimize_deficit_over_b(const Dims& dims, double xi, const QuadratureConfig& quad = {});

// deficit / xi^4 on the degenerate family against the constant of the quartic
// lower bound, converted by E(phi)^2 / ||1||_{2*}^2.
struct PlateauReport {
  std::vector<std::pair<double, double>> scaled;  // (xi, deficit / xi^4)
  double plateau;    // mean over the three smallest xi
  double spread;     // max relative deviation among those three
  double assembled;
  double ratio;      // plateau / assembled
};
PlateauReport plateau_report(const Dims& dims, const std::vector<DeficitSample>& degenerate);
double assembled_plateau_constant(const Dims& dims, const QuadratureConfig& quad = {});

}  // namespace qcurve
