#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "beltrami/coefficient.hpp"
#include "beltrami/field.hpp"
#include "beltrami/probes.hpp"
#include "beltrami/transforms.hpp"

namespace beltrami {

struct SeminormRow {
  double scale_r;
  double value;
  int pairs;
};

/// Scale-indexed seminorm measurements, scales strictly decreasing.
struct SeminormTable {
  std::vector<SeminormRow> rows;
  void append(double scale_r, double value, int pairs);
};

/// Least-squares fit of M(r) = slope * sqrt(-log r) + intercept.
struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int window_j_min = 0;
  int window_j_max = 0;
};

/// How a seminorm table diverges as the scale shrinks, decided by the
/// ratio-of-increments test: a power law r^-beta has constant increment
/// ratio 2^beta, the root-log profile has ratio tending to 1 from below,
/// and bounded tables stop growing.
enum class DivergenceClass { Bounded, SqrtLog, PowerLaw };

/// Pointwise evaluation of a function and its mixed Wirtinger derivatives at
/// probe points.  Closed forms differentiate by scaled finite differences
/// unless exact derivatives are supplied; grid fields snap probes to nodes
/// and read precomputed derivative fields.
class ProbeEvaluator {
 public:
  virtual ~ProbeEvaluator() = default;
  virtual Complex deriv(Complex z, int p, int q) const = 0;  // (0,0) is the value
  virtual Complex snap(Complex z) const { return z; }
  virtual double min_separation() const { return 0.0; }
};

/// Closed-form function; optional exact derivative evaluator; otherwise
/// Richardson-extrapolated differences with step |z|/64.
class ClosedFormProbe final : public ProbeEvaluator {
 public:
  using Deriv = std::function<Complex(Complex, int, int)>;
  explicit ClosedFormProbe(std::function<Complex(Complex)> fn, Deriv exact = nullptr)
      : fn_(std::move(fn)), exact_(std::move(exact)) {}
  Complex deriv(Complex z, int p, int q) const override;

 private:
  std::function<Complex(Complex)> fn_;
  Deriv exact_;
};

/// Term-series function with exact derivatives of any order.
class SeriesProbe final : public ProbeEvaluator {
 public:
  SeriesProbe(const LogPowerSeries& series, int max_order);
  Complex deriv(Complex z, int p, int q) const override;

 private:
  int max_order_;
  std::vector<LogPowerSeries> derivs_;  // indexed p * (max+1) + q
};

/// Grid field with derivative fields precomputed to max_order; probe points
/// snap to nodes so quotients become honest nodal differences.
class GridProbe final : public ProbeEvaluator {
 public:
  GridProbe(const ComplexField& u, int max_order);
  Complex deriv(Complex z, int p, int q) const override;
  Complex snap(Complex z) const override;
  double min_separation() const override { return spacing_; }

 private:
  int max_order_;
  double spacing_;
  std::vector<ComplexField> derivs_;
};

/// M(r) = max over probe pairs with |z1|,|z2| in [r,2r] and separation in
/// [r/4, r] of |D^m u(z1) - D^m u(z2)| / |z1 - z2|^alpha, D^m running over
/// all mixed Wirtinger derivatives of order m.  alpha = 1 is the Lipschitz
/// quotient.
/// The pair separation band is [lo_frac*r, hi_frac*r]; the defaults realize
/// the [r/4, r] convention and the scale-consistency property varies them.
SeminormTable holder_seminorm(const ProbeEvaluator& u, int order_m, double alpha,
                              const ProbeSet& probes, double sep_lo_frac = 0.25,
                              double sep_hi_frac = 1.0);
inline SeminormTable lipschitz_quotient(const ProbeEvaluator& u, int order_m,
                                        const ProbeSet& probes) {
  return holder_seminorm(u, order_m, 1.0, probes);
}

/// Second-difference table |D^m u(z+h) - 2 D^m u(z) + D^m u(z-h)| / |h| with
/// |h| ~ r; boundedness indicates Zygmund-class membership at order m+1.
SeminormTable zygmund_seminorm(const ProbeEvaluator& u, int order_m, const ProbeSet& probes);

/// Least squares against sqrt(-log r); needs at least 5 rows.
LogFit fit_sqrt_log(const SeminormTable& table);

DivergenceClass classify_divergence(const SeminormTable& table);

/// The quantitative core: evaluates the k-th zbar-derivative of
/// DzInv(chi a_zbar) along probe clusters (kernel-differentiated adaptive
/// quadrature), tables max over angles per radius, fits sqrt(-log r), and
/// runs the closed-form surrogate dzbar^{k+1} b / 100 through the same
/// max/fit pipeline.  The smooth discrepancy between the two contributes
/// slope ~ 0, so the fitted slopes must agree.
struct LemmaBlowupResult {
  int k = 0;
  SeminormTable transform_table;
  SeminormTable surrogate_table;
  LogFit transform_fit;
  LogFit surrogate_fit;
  double slope_target = 0.0;  // (k+1)!/100
};
LemmaBlowupResult lemma_blowup_experiment(const CounterexampleCoefficient& coeff,
                                          const ProbeSet& probes, const QuadratureSpec& quad,
                                          int jobs = 1);

}  // namespace beltrami
