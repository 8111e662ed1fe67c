#pragma once

#include <vector>

#include "beltrami/types.hpp"

namespace beltrami {

/// Finite sum of terms  c * z^p * conj(z)^q * (-log|z|)^(s2/2)  with integer
/// p, q and half-integer exponent s2/2 on the log factor.  This family is
/// closed under the Wirtinger derivatives d/dz and d/dzbar, which is exactly
/// what is needed to differentiate z̄-power times root-log expressions to any
/// order without finite differences.
///
/// Valid on 0 < |z| < 1 (the log factor must stay positive).  At z = 0 the
/// sum evaluates to its limit 0 when every term has p + q >= 1.
class LogPowerSeries {
 public:
  struct Term {
    long double coeff;
    int p;   // power of z
    int q;   // power of conj(z)
    int s2;  // twice the exponent of (-log|z|)
  };

  LogPowerSeries() = default;
  explicit LogPowerSeries(std::vector<Term> terms) : terms_(std::move(terms)) {}

  /// z̄^m * (-log|z|)^(1/2); the building block b(z) uses m = k+1.
  static LogPowerSeries conj_power_root_log(int m);

  LogPowerSeries dz() const;
  LogPowerSeries dzbar() const;
  LogPowerSeries derivative(int p, int q) const;  // d/dz^p d/dzbar^q
  LogPowerSeries scaled(double factor) const;

  /// Evaluate at z, 0 < |z| < 1.  Throws DomainError for |z| >= 1, and for
  /// z = 0 unless every term vanishes in the limit.
  Complex eval(Complex z) const;

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<Term> terms_;
};

}  // namespace beltrami
