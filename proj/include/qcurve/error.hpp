// Error categories shared by every module.  The CLI maps DomainError and
// AccuracyError to exit code 1; InternalError signals a broken invariant.
#pragma once

#include <stdexcept>
#include <string>

namespace qcurve {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qcurve
