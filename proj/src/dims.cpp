#include "qcurve/dims.hpp"

#include "qcurve/error.hpp"

namespace qcurve {

Dims::Dims(int n, int k) : n_(n), k_(k) {
  if (k < 1) throw DomainError("dims: k must be a positive integer (got k=" + std::to_string(k) + ")");
  if (n < 1) throw DomainError("dims: n must be a positive integer (got n=" + std::to_string(n) + ")");
  if (n <= 2 * k)
    throw DomainError("dims: n > 2k violated (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
}

ExactScalar Dims::critical_exponent() const { return ExactScalar(2 * n_, n_ - 2 * k_); }

ExactScalar Dims::kernel_ratio() const { return ExactScalar(n_ + 2 * k_, n_ - 2 * k_); }

ExactScalar Dims::shift(int l) const { return ExactScalar(n_ + 2 * k_ - 4 * l, 2); }

std::string Dims::label() const { return "(n=" + std::to_string(n_) + ",k=" + std::to_string(k_) + ")"; }

}  // namespace qcurve
