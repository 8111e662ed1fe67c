#pragma once

#include <functional>
#include <string>
#include <vector>

#include "beltrami/field.hpp"
#include "beltrami/probes.hpp"
#include "beltrami/term_series.hpp"
#include "beltrami/types.hpp"

namespace beltrami {

/// C^inf monotone step: 0 for t <= 0, 1 for t >= 1, built from
/// sigma(t) = exp(-1/t).
double smooth_step(double t);
double smooth_step_deriv(double t);

/// The compactly supported coefficient a(z) with parameter k:
///
///   a(z) = -zbar^(k+1) / (400 z (-log|z|)^(1/2))   on 0 < |z| <= 1/2,
///
/// multiplied by a radial C^inf taper on 1/2 < |z| < 3/4 and zero outside,
/// with a(0) = 0.  Also carries the potential b(z) = zbar^(k+1) (-log|z|)^(1/2)
/// and the cutoff chi (1 on r <= 1/8, supported in r <= 3/8), plus exact
/// derivatives of everything the experiments need.
class CounterexampleCoefficient {
 public:
  explicit CounterexampleCoefficient(int k);

  int k() const { return k_; }
  static constexpr double delta0 = 0.1;          // C^0 smallness budget
  static constexpr double plateau_radius = 0.5;  // closed form holds below
  static constexpr double taper_outer = 0.75;    // support radius of a
  static constexpr double chi_plateau = 0.125;   // chi == 1 below
  static constexpr double chi_outer = 0.375;     // supp chi inside

  Complex a(Complex z) const;
  Complex a_z(Complex z) const;
  Complex a_zbar(Complex z) const;
  /// d^p/dz^p d^q/dzbar^q a, p+q <= k+2.  Exact on r <= 0.45 (term algebra),
  /// finite differences across the taper.
  Complex a_deriv(Complex z, int p, int q) const;

  Complex b(Complex z) const;                       // 0 <= |z| < 1
  Complex b_deriv(Complex z, int p, int q) const;   // p+q <= k+2

  double taper(double r) const;        // psi: 1 on r <= 1/2, 0 on r >= 3/4
  double taper_deriv(double r) const;
  double chi(double r) const;
  Complex chi_z(Complex z) const;
  Complex chi_zbar(Complex z) const;

  /// chi(|z|) * a_zbar(z): the obstruction data of the blow-up experiment.
  Complex chi_a_zbar(Complex z) const;

  const LogPowerSeries& b_series() const { return b_series_; }
  const LogPowerSeries& a_plateau_series() const { return a_series_; }

 private:
  Complex plateau_deriv(Complex z, int p, int q) const;

  int k_;
  LogPowerSeries b_series_;
  LogPowerSeries a_series_;        // (1/100) d/dz b
  LogPowerSeries a_z_series_;
  LogPowerSeries a_zbar_series_;
};

struct PropertyCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_pass() const;
};

/// Decay audits reusable against arbitrary coefficients (the sabotage tests
/// feed non-decaying ones): finite-difference derivative magnitudes of z*a
/// up to order k+1, and of a/z up to order k-1, along shrinking probe radii.
PropertyCheck audit_decay_za(const std::function<Complex(Complex)>& a, int k,
                             const ProbeSet& probes);
PropertyCheck audit_decay_a_over_z(const std::function<Complex(Complex)>& a, int k,
                                   const ProbeSet& probes);

/// Audit of the coefficient properties: smoothness away from the origin,
/// blow-up evidence for the transformed derivative, the two decay conditions,
/// compact support in the unit disk, and the sup bound against delta0.
PropertyReport verify_properties(const CounterexampleCoefficient& coeff,
                                 const DiskGrid& grid, const ProbeSet& probes);

}  // namespace beltrami
