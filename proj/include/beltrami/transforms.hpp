#pragma once

#include <functional>

#include "beltrami/field.hpp"
#include "beltrami/types.hpp"

namespace beltrami {

/// The integral operators on the unit disk:
///   DzInv    -- kernel 1/(pi zbar), a right inverse of d/dz,
///   DzbarInv -- kernel 1/(pi z),    a right inverse of d/dzbar,
///   Beurling -- the composition d/dz o DzbarInv (own operation, not a kernel).
/// DzInv(phi) == conj(DzbarInv(conj phi)) by construction.
enum class TransformKind { DzInv, DzbarInv, Beurling };

/// True when the field vanishes on every node outside the closed unit disk.
bool is_disk_supported(const ComplexField& phi);
/// Copy of phi with everything outside the closed unit disk zeroed.
ComplexField mask_to_disk(const ComplexField& phi);

/// Area convolution with the Cauchy kernel, discretized with exactly
/// cell-integrated kernel weights (the singular cell integrates to zero by
/// symmetry) and evaluated as a circular FFT convolution on the padded grid.
/// Requires phi masked to the unit disk; kind must be DzInv or DzbarInv.
ComplexField cauchy_green(TransformKind kind, const ComplexField& phi);

/// Beurling transform S = d/dz o DzbarInv as a Fourier multiplier
/// conj(kappa)/kappa on the padded torus; the zero frequency is set to 0
/// (mean convention).  Requires phi masked to the unit disk.
ComplexField beurling(const ComplexField& phi);

/// Adaptive polar quadrature parameters for pointwise transform evaluation.
struct QuadratureSpec {
  double rel_tol = 1e-4;
  double abs_floor = 1e-14;
  int max_doublings = 7;
  int initial_radial = 8;
  int initial_angular = 16;
};

/// Pointwise evaluation of the transform of a closed-form density at points
/// far below grid resolution.  The density must be supported in
/// |zeta| <= support_radius and integrable against the kernel.  The domain is
/// split into a smooth patch around `point` (polar coordinates about the
/// singularity) and dyadic annuli toward the origin, each refined by node
/// doubling until two levels agree.
///
/// deriv_order m applies d^m/dzbar^m (DzInv) or d^m/dz^m (DzbarInv) to the
/// kernel under the integral, so strongly divergent derivative profiles can
/// be measured without catastrophic cancellation.
Complex probe_transform(TransformKind kind, const std::function<Complex(Complex)>& phi,
                        double support_radius, Complex point, const QuadratureSpec& spec,
                        int deriv_order = 0);

}  // namespace beltrami
