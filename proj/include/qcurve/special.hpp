// Gamma-function helpers in log space, sphere volumes and the sharp
// k-th order Sobolev constant on S^n.
#pragma once

namespace qcurve {

double log_gamma(double x);  // x > 0
double digamma(double x);

// ln(Gamma(x + s) / Gamma(x)). Integer shifts use the Pochhammer product.
double log_gamma_ratio(double x, double s);

// |S^d| = 2 pi^{(d+1)/2} / Gamma((d+1)/2)
double log_sphere_volume(int d);
double sphere_volume(int d);

// S_{n,k} = |S^n|^{2k/n} Gamma((n+2k)/2) / Gamma((n-2k)/2)
double log_sobolev_sharp(int n, int k);
double sobolev_sharp(int n, int k);

}  // namespace qcurve
