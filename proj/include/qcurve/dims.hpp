// (n, k): manifold dimension and half the operator order, with n > 2k.
#pragma once

#include "qcurve/exact.hpp"

#include <string>

namespace qcurve {

class Dims {
 public:
  // Throws DomainError naming the violated constraint.
  Dims(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }

  ExactScalar critical_exponent() const;  // 2n/(n-2k)
  double two_star() const { return critical_exponent().to_double(); }
  // (n+2k)/(n-2k): the ratio P_k(tau0^-2)/p_{k,0}
  ExactScalar kernel_ratio() const;
  // n/2 + k - 2l, l = 1..k
  ExactScalar shift(int l) const;
  std::string label() const;

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  int n_;
  int k_;
};

}  // namespace qcurve
