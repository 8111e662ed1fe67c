#pragma once

#include <functional>
#include <vector>

#include "beltrami/coefficient.hpp"
#include "beltrami/field.hpp"
#include "beltrami/types.hpp"

namespace beltrami {

/// Solved chart for w_zbar = mu w_z.  Derivative fields are finite
/// differences of w itself, so `residual` measures the whole pipeline, not
/// the fixed-point bookkeeping.  Normalized so the origin node has w_z = 1.
struct Chart {
  ComplexField w, w_z, w_zbar;
  ComplexField f;                   // log w_z, f(0) = 0
  double residual = 0.0;            // sup |w_zbar - mu w_z| on |z| <= trusted_radius
  int iterations = 0;
  std::vector<double> increments;   // sup norms of successive Neumann updates
  bool log_branch_fallback = false;
  static constexpr double trusted_radius = 0.9;
};

/// Neumann iteration h <- mu (1 + S h), w = z + DzbarInv h.  Requires
/// sup|mu| < 1/4 (the counterexample coefficient keeps sup|mu| below 0.004,
/// far inside the contraction regime) and mu supported in the disk.
Chart solve_beltrami(const ComplexField& mu, double tol = 1e-10, int max_iter = 50);

/// log of the derivative field with the branch pinned by f(0) = 0.  Principal
/// branch while |w_z - 1| < 1 everywhere on the trusted region; otherwise
/// falls back to argument continuation along grid rows and sets the chart
/// flag.  Throws if w_z vanishes on the trusted region.
ComplexField compute_f(const ComplexField& w_z, bool* used_fallback = nullptr);

/// sup over r_lo <= |z| <= r_hi of |f_zbar + conj(a) f_z + conj(a_zbar)|,
/// the residual of the first-order equation f solves.
double eq2_residual_sup(const Chart& chart, const CounterexampleCoefficient& coeff,
                        double r_lo, double r_hi);

/// Closed-form pieces feeding the decomposition; an adapter fills this from
/// CounterexampleCoefficient, and tests can pass a zero coefficient.
struct DecompositionInput {
  std::function<Complex(Complex)> a;
  std::function<Complex(Complex)> a_zbar;
  std::function<double(double)> chi;
  std::function<Complex(Complex)> chi_z;
  std::function<Complex(Complex)> chi_zbar;
};
DecompositionInput decomposition_input(const CounterexampleCoefficient& coeff);

/// g = chi f, h = zbar g, and the four-term splitting of g:
///   g = (g - DzbarInv g_zbar) + DzbarInv(chi_zbar f + chi_z abar f)
///       - DzbarInv(abar g_z) - DzbarInv(chi abar_z).
struct Decomposition {
  ComplexField g, h;
  ComplexField antiholo, smooth_cutoff, gain, obstruction;
  double eq3_residual = 0.0;  // defining equation of g
  double eq4_residual = 0.0;  // defining equation of h
  double sum_residual = 0.0;  // four terms against g
};

/// Builds the decomposition and verifies the two defining equations and the
/// sum identity on |z| <= 0.9; residuals beyond rel_tol (scaled by the data)
/// raise ConvergenceError with per-equation diagnostics.
Decomposition decompose(const Chart& chart, const DecompositionInput& input,
                        double rel_tol = 1e-2);

}  // namespace beltrami
