#pragma once

#include <array>
#include <functional>
#include <vector>

#include "beltrami/coefficient.hpp"
#include "beltrami/types.hpp"

namespace beltrami {

using Mat2 = std::array<std::array<double, 2>, 2>;

/// The unique real 2x2 matrix with J^2 = -I whose i-eigenvector is the real
/// representation of d/dz + a d/dzbar; solved from the induced 4-equation
/// real linear system.  Requires |a| != 1 (ellipticity).
Mat2 j_from_a(Complex a);

/// Pointwise almost complex structure on R^2 induced by a coefficient field.
struct AlmostComplexStructure2D {
  explicit AlmostComplexStructure2D(std::function<Complex(Complex)> coefficient)
      : a(std::move(coefficient)) {}
  std::function<Complex(Complex)> a;
  Mat2 j_at(Complex p) const { return j_from_a(a(p)); }
};

/// Complex vector field on R^2 in the real frame (d/dx, d/dy).
using VectorField2 = std::function<std::array<Complex, 2>(Complex)>;

/// Nijenhuis tensor N_J(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]
/// at a point, with Lie brackets assembled from order-4 centered differences
/// at the given step.
std::array<Complex, 2> nijenhuis(const AlmostComplexStructure2D& J, const VectorField2& X,
                                 const VectorField2& Y, Complex point, double step);

/// Frame and coframe of the n-dimensional lift: the plane structure acts in
/// the first complex coordinate and the standard structure fills the rest.
///   frame:   Z_1 = d/dz1 + a(z1) d/dzbar1,  Z_j = d/dz^j (j >= 2)
///   coframe: theta = dzbar1 - a dz1,        dzbar^j (j >= 2)
struct LiftedStructureND {
  int n = 1;
  std::function<Complex(Complex)> a;

  using PointND = std::vector<Complex>;
  /// Components of frame field `which` (0-based) in the real coordinate
  /// frame (d/dx1, d/dy1, ..., d/dxn, d/dyn).
  std::vector<Complex> frame(int which, const PointND& p) const;
  /// Coframe element `which` applied to a real-frame component vector.
  Complex pair_coframe(int which, const PointND& p, const std::vector<Complex>& v) const;
};

LiftedStructureND lift(const CounterexampleCoefficient& coeff, int n);

/// Max over points and frame pairs of the coframe pairing of the Lie bracket
/// of polynomially modulated frame sections.  The modulated brackets stay in
/// the eigenbundle exactly in closed form, so any nonzero pairing is pure
/// discretization error of the order-4 difference stencils.
double involutivity_check(const LiftedStructureND& lifted,
                          const std::vector<LiftedStructureND::PointND>& points, double step);

}  // namespace beltrami
