#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace beltrami {

using Complex = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Thrown when an operation is asked for something outside its contract
/// (bad grid size, derivative order too large, point outside the domain, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative or adaptive numerical process fails to converge.
/// `estimate` carries the last error estimate observed.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate(estimate) {}
  double estimate;
};

inline bool is_finite(Complex v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

}  // namespace beltrami
