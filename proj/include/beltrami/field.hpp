#pragma once

#include <functional>
#include <string>
#include <vector>

#include "beltrami/types.hpp"

namespace beltrami {

/// Uniform n x n grid on the square [-L, L]^2 with the closed unit disk
/// strictly inside.  Nodes sit at -L + i*h, h = 2L/n, so with even n the
/// origin is a node.  L >= 2 keeps circular FFT convolution of unit-disk
/// supported data alias-free on the disk.
struct DiskGrid {
  DiskGrid(int n, double half_width = 2.0);

  int n;
  double half_width;

  double spacing() const { return 2.0 * half_width / n; }
  Complex node(int ix, int iy) const {
    const double h = spacing();
    return {-half_width + ix * h, -half_width + iy * h};
  }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * n + ix;
  }
  bool operator==(const DiskGrid& o) const {
    return n == o.n && half_width == o.half_width;
  }
};

/// Complex samples over a DiskGrid, immutable by convention after it is
/// filled.  `trusted_margin` counts boundary cells whose values came from
/// one-sided stencils or wrapped convolution and should not be relied on.
class ComplexField {
 public:
  explicit ComplexField(const DiskGrid& grid)
      : grid_(grid), values_(static_cast<std::size_t>(grid.n) * grid.n) {}

  const DiskGrid& grid() const { return grid_; }
  Complex at(int ix, int iy) const { return values_[grid_.index(ix, iy)]; }
  Complex& at(int ix, int iy) { return values_[grid_.index(ix, iy)]; }
  const std::vector<Complex>& values() const { return values_; }
  std::vector<Complex>& values() { return values_; }

  int trusted_margin() const { return trusted_margin_; }
  void set_trusted_margin(int m) { trusted_margin_ = m; }

 private:
  DiskGrid grid_;
  std::vector<Complex> values_;
  int trusted_margin_ = 0;
};

enum class Dir { Z, Zbar };

/// Fill a field from a pointwise function.  Throws DomainError naming the
/// first node where fn returns a non-finite value.
ComplexField sample(const std::function<Complex(Complex)>& fn, const DiskGrid& grid);

/// Wirtinger derivative of grid data by centered order-4 stencils applied
/// `order` times (order <= 4).  One-sided stencils fill the boundary band,
/// which widens trusted_margin by 2 per application.
ComplexField differentiate(const ComplexField& u, Dir dir, int order = 1);

/// Bicubic (4x4 tensor Lagrange) interpolation; exact at nodes.  Throws if
/// the interpolation stencil does not fit inside the grid.
Complex evaluate_at(const ComplexField& u, Complex point);

/// Pointwise algebra used all over the solver; result trust is the max of
/// the operands' margins.
ComplexField add(const ComplexField& a, const ComplexField& b);
ComplexField sub(const ComplexField& a, const ComplexField& b);
ComplexField scale(const ComplexField& a, Complex factor);
ComplexField multiply(const ComplexField& a, const ComplexField& b);
ComplexField conjugate(const ComplexField& a);

/// sup |u| over nodes with |z| <= radius_cap (and outside the untrusted
/// boundary band).
double sup_abs(const ComplexField& u, double radius_cap);
double sup_abs_diff(const ComplexField& u, const ComplexField& v, double radius_cap);
/// Discrete L2 norm (sqrt of h^2 * sum |u|^2).
double l2_norm(const ComplexField& u);

/// Mixed Wirtinger derivative d^p/dz^p d^q/dzbar^q of a closed-form function
/// by composed centered differences at the given step, Richardson-extrapolated
/// once (leading error O(step^4)).
Complex wirtinger_fd(const std::function<Complex(Complex)>& fn, Complex z0, int p,
                     int q, double step);

/// Debug serialization, row-major "re,im" pairs. Not a stability contract.
void write_field_csv(const ComplexField& u, const std::string& path);
void write_field_binary(const ComplexField& u, const std::string& path);

}  // namespace beltrami
