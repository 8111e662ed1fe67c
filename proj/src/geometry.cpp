#include "beltrami/geometry.hpp"

#include <cmath>

namespace beltrami {

Mat2 j_from_a(Complex a) {
  if (std::abs(std::abs(a) - 1.0) < 1e-12)
    throw DomainError("j_from_a: |a| = 1 is degenerate (eigenvectors collide)");
  // v = real representation of d/dz + a d/dzbar in (d/dx, d/dy).
  const Complex v1 = (1.0 + a) / 2.0;
  const Complex v2 = Complex(0.0, 1.0) * (a - 1.0) / 2.0;
  const double det = v1.real() * v2.imag() - v2.real() * v1.imag();  // (|a|^2 - 1)/4
  Mat2 J;
  for (int row = 0; row < 2; ++row) {
    const Complex rhs = Complex(0.0, 1.0) * (row == 0 ? v1 : v2);
    J[row][0] = (rhs.real() * v2.imag() - v2.real() * rhs.imag()) / det;
    J[row][1] = (v1.real() * rhs.imag() - rhs.real() * v1.imag()) / det;
  }
  return J;
}

namespace {

std::array<Complex, 2> apply_j(const Mat2& J, const std::array<Complex, 2>& v) {
  return {J[0][0] * v[0] + J[0][1] * v[1], J[1][0] * v[0] + J[1][1] * v[1]};
}

// Order-4 centered difference of a vector-field component along axis (0 = x,
// 1 = y) at the given step.
std::array<Complex, 2> fd_axis(const VectorField2& F, Complex p, int axis, double step) {
  const Complex e = axis == 0 ? Complex(step, 0.0) : Complex(0.0, step);
  std::array<Complex, 2> out;
  const auto fp2 = F(p + 2.0 * e), fp1 = F(p + e), fm1 = F(p - e), fm2 = F(p - 2.0 * e);
  for (int c = 0; c < 2; ++c)
    out[c] = (-fp2[c] + 8.0 * fp1[c] - 8.0 * fm1[c] + fm2[c]) / (12.0 * step);
  return out;
}

std::array<Complex, 2> lie_bracket(const VectorField2& A, const VectorField2& B, Complex p,
                                   double step) {
  const auto a = A(p), b = B(p);
  const auto dBx = fd_axis(B, p, 0, step), dBy = fd_axis(B, p, 1, step);
  const auto dAx = fd_axis(A, p, 0, step), dAy = fd_axis(A, p, 1, step);
  std::array<Complex, 2> out;
  for (int c = 0; c < 2; ++c)
    out[c] = a[0] * dBx[c] + a[1] * dBy[c] - b[0] * dAx[c] - b[1] * dAy[c];
  return out;
}

}  // namespace

std::array<Complex, 2> nijenhuis(const AlmostComplexStructure2D& J, const VectorField2& X,
                                 const VectorField2& Y, Complex point, double step) {
  if (step <= 0.0) throw DomainError("nijenhuis: step must be positive");
  if (std::abs(point.real()) + 4.0 * step > 1.9 || std::abs(point.imag()) + 4.0 * step > 1.9)
    throw DomainError("nijenhuis: point too close to the sampling boundary");
  VectorField2 JX = [&](Complex p) { return apply_j(J.j_at(p), X(p)); };
  VectorField2 JY = [&](Complex p) { return apply_j(J.j_at(p), Y(p)); };
  const auto t1 = lie_bracket(JX, JY, point, step);
  const auto t2 = apply_j(J.j_at(point), lie_bracket(JX, Y, point, step));
  const auto t3 = apply_j(J.j_at(point), lie_bracket(X, JY, point, step));
  const auto t4 = lie_bracket(X, Y, point, step);
  return {t1[0] - t2[0] - t3[0] - t4[0], t1[1] - t2[1] - t3[1] - t4[1]};
}

std::vector<Complex> LiftedStructureND::frame(int which, const PointND& p) const {
  if (which < 0 || which >= n) throw DomainError("frame: index out of range");
  std::vector<Complex> comp(2 * n, Complex(0.0, 0.0));
  if (which == 0) {
    const Complex av = a(p[0]);
    // d/dz1 + a d/dzbar1 = ((1+a)/2, i(a-1)/2) in (d/dx1, d/dy1).
    comp[0] = (1.0 + av) / 2.0;
    comp[1] = Complex(0.0, 1.0) * (av - 1.0) / 2.0;
  } else {
    comp[2 * which] = 0.5;
    comp[2 * which + 1] = Complex(0.0, -0.5);
  }
  return comp;
}

Complex LiftedStructureND::pair_coframe(int which, const PointND& p,
                                        const std::vector<Complex>& v) const {
  if (which < 0 || which >= n) throw DomainError("pair_coframe: index out of range");
  if (which == 0) {
    // theta = dzbar1 - a dz1 = (1 - a) dx1 - i (1 + a) dy1.
    const Complex av = a(p[0]);
    return (1.0 - av) * v[0] - Complex(0.0, 1.0) * (1.0 + av) * v[1];
  }
  // dzbar^j = dx_j - i dy_j.
  return v[2 * which] - Complex(0.0, 1.0) * v[2 * which + 1];
}

LiftedStructureND lift(const CounterexampleCoefficient& coeff, int n) {
  if (n < 1 || n > 3) throw DomainError("lift: supported complex dimension is 1..3");
  LiftedStructureND out;
  out.n = n;
  out.a = [&coeff](Complex z) { return coeff.a(z); };
  return out;
}

double involutivity_check(const LiftedStructureND& lifted,
                          const std::vector<LiftedStructureND::PointND>& points,
                          double step) {
  if (step <= 0.0) throw DomainError("involutivity_check: step must be positive");
  const int n = lifted.n;
  if (n == 1) return 0.0;  // a single frame field has no brackets

  // Sections X_i = c_i Z_i + e_i Z_1 with polynomial modulations.  The Z_1
  // admixture carries a z1-dependent coefficient: with constant weights the
  // antisymmetry of the bracket cancels the stencil truncation on a exactly
  // (both error terms are the same Z_1-directed quantity), leaving only
  // roundoff.  A z1-linear weight keeps the sections inside the eigenbundle
  // but lets the coefficient's fourth derivative survive into the defect.
  auto modulation = [n](int i, const LiftedStructureND::PointND& p) -> Complex {
    return 1.0 + Complex(0.3, 0.1) * p[(i + 1) % n];
  };
  auto section = [&](int i, const LiftedStructureND::PointND& p) {
    std::vector<Complex> v = lifted.frame(i, p);
    const Complex c = modulation(i, p);
    for (Complex& x : v) x *= c;
    if (i != 0) {
      const std::vector<Complex> z1 = lifted.frame(0, p);
      const Complex e = 0.4 + 0.2 * p[0];
      for (std::size_t m = 0; m < v.size(); ++m) v[m] += e * z1[m];
    }
    return v;
  };

  auto shifted = [](const LiftedStructureND::PointND& p, int axis, double delta) {
    LiftedStructureND::PointND q = p;
    const int cc = axis / 2;
    q[cc] += (axis % 2 == 0) ? Complex(delta, 0.0) : Complex(0.0, delta);
    return q;
  };

  double worst = 0.0;
  for (const auto& p : points) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        // Bracket components via order-4 differences along each real axis.
        std::vector<Complex> bracket(2 * n, Complex(0.0, 0.0));
        const auto vi = section(i, p), vj = section(j, p);
        for (int axis = 0; axis < 2 * n; ++axis) {
          const auto jp2 = section(j, shifted(p, axis, 2 * step));
          const auto jp1 = section(j, shifted(p, axis, step));
          const auto jm1 = section(j, shifted(p, axis, -step));
          const auto jm2 = section(j, shifted(p, axis, -2 * step));
          const auto ip2 = section(i, shifted(p, axis, 2 * step));
          const auto ip1 = section(i, shifted(p, axis, step));
          const auto im1 = section(i, shifted(p, axis, -step));
          const auto im2 = section(i, shifted(p, axis, -2 * step));
          for (int c = 0; c < 2 * n; ++c) {
            const Complex dj_c = (-jp2[c] + 8.0 * jp1[c] - 8.0 * jm1[c] + jm2[c]) / (12.0 * step);
            const Complex di_c = (-ip2[c] + 8.0 * ip1[c] - 8.0 * im1[c] + im2[c]) / (12.0 * step);
            bracket[c] += vi[axis] * dj_c - vj[axis] * di_c;
          }
        }
        for (int w = 0; w < n; ++w)
          worst = std::max(worst, std::abs(lifted.pair_coframe(w, p, bracket)));
      }
    }
  }
  return worst;
}

}  // namespace beltrami
