#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace caz {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Point outside the model domain, or outside a certified truncation radius.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical procedure failed to reach its stated tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configured size cap exceeded (truncation order, diagram enumeration).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace caz
