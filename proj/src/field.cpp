#include "beltrami/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace beltrami {

DiskGrid::DiskGrid(int n, double half_width) : n(n), half_width(half_width) {
  if (n < 256 || n % 2 != 0) throw DomainError("DiskGrid: n must be even and >= 256");
  if (half_width < 2.0)
    throw DomainError("DiskGrid: half_width must be >= 2 (unit disk strictly inside, padded)");
}

ComplexField sample(const std::function<Complex(Complex)>& fn, const DiskGrid& grid) {
  ComplexField out(grid);
  for (int iy = 0; iy < grid.n; ++iy) {
    for (int ix = 0; ix < grid.n; ++ix) {
      const Complex z = grid.node(ix, iy);
      const Complex v = fn(z);
      if (!is_finite(v)) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "sample: non-finite value at node (%d,%d), z=(%g,%g)",
                      ix, iy, z.real(), z.imag());
        throw DomainError(buf);
      }
      out.at(ix, iy) = v;
    }
  }
  return out;
}

namespace {

// One pass of the order-4 first derivative along an axis. Centered stencil
// (-f2 + 8 f1 - 8 fm1 + fm2) / 12h in the interior, one-sided order-4 at the
// two-cell boundary band.
void axis_derivative(const ComplexField& u, ComplexField& out, bool along_x) {
  const int n = u.grid().n;
  const double h = u.grid().spacing();
  auto val = [&](int i, int j) { return along_x ? u.at(i, j) : u.at(j, i); };
  auto set = [&](int i, int j, Complex v) {
    if (along_x)
      out.at(i, j) = v;
    else
      out.at(j, i) = v;
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Complex d;
      if (i >= 2 && i <= n - 3) {
        d = (-val(i + 2, j) + 8.0 * val(i + 1, j) - 8.0 * val(i - 1, j) + val(i - 2, j)) /
            (12.0 * h);
      } else if (i < 2) {
        d = (-25.0 * val(i, j) + 48.0 * val(i + 1, j) - 36.0 * val(i + 2, j) +
             16.0 * val(i + 3, j) - 3.0 * val(i + 4, j)) /
            (12.0 * h);
      } else {
        d = (25.0 * val(i, j) - 48.0 * val(i - 1, j) + 36.0 * val(i - 2, j) -
             16.0 * val(i - 3, j) + 3.0 * val(i - 4, j)) /
            (12.0 * h);
      }
      set(i, j, d);
    }
  }
}

}  // namespace

ComplexField differentiate(const ComplexField& u, Dir dir, int order) {
  if (order < 1 || order > 4) throw DomainError("differentiate: order must be in 1..4");
  ComplexField cur = u;
  ComplexField dx(u.grid()), dy(u.grid());
  for (int pass = 0; pass < order; ++pass) {
    axis_derivative(cur, dx, true);
    axis_derivative(cur, dy, false);
    const Complex iy = dir == Dir::Z ? Complex(0.0, -0.5) : Complex(0.0, 0.5);
    for (std::size_t m = 0; m < cur.values().size(); ++m) {
      cur.values()[m] = 0.5 * dx.values()[m] + iy * dy.values()[m];
    }
  }
  cur.set_trusted_margin(u.trusted_margin() + 2 * order);
  return cur;
}

Complex evaluate_at(const ComplexField& u, Complex point) {
  const DiskGrid& g = u.grid();
  const double h = g.spacing();
  const double fx = (point.real() + g.half_width) / h;
  const double fy = (point.imag() + g.half_width) / h;
  if (fx < 0 || fy < 0 || fx > g.n - 1 || fy > g.n - 1)
    throw DomainError("evaluate_at: point outside grid");
  // 4x4 tensor Lagrange, anchored so the stencil fits.
  int ix = static_cast<int>(std::floor(fx)) - 1;
  int iy = static_cast<int>(std::floor(fy)) - 1;
  ix = std::clamp(ix, 0, g.n - 4);
  iy = std::clamp(iy, 0, g.n - 4);
  const double tx = fx - ix;  // in node units relative to stencil origin
  const double ty = fy - iy;
  auto lagrange4 = [](double t, double w[4]) {
    w[0] = (t - 1) * (t - 2) * (t - 3) / -6.0;
    w[1] = t * (t - 2) * (t - 3) / 2.0;
    w[2] = t * (t - 1) * (t - 3) / -2.0;
    w[3] = t * (t - 1) * (t - 2) / 6.0;
  };
  double wx[4], wy[4];
  lagrange4(tx, wx);
  lagrange4(ty, wy);
  Complex acc = 0.0;
  for (int b = 0; b < 4; ++b) {
    Complex row = 0.0;
    for (int a = 0; a < 4; ++a) row += wx[a] * u.at(ix + a, iy + b);
    acc += wy[b] * row;
  }
  return acc;
}

namespace {
ComplexField binary_op(const ComplexField& a, const ComplexField& b,
                       Complex (*op)(Complex, Complex)) {
  if (!(a.grid() == b.grid())) throw DomainError("field op: grid mismatch");
  ComplexField out(a.grid());
  for (std::size_t i = 0; i < out.values().size(); ++i)
    out.values()[i] = op(a.values()[i], b.values()[i]);
  out.set_trusted_margin(std::max(a.trusted_margin(), b.trusted_margin()));
  return out;
}
}  // namespace

ComplexField add(const ComplexField& a, const ComplexField& b) {
  return binary_op(a, b, +[](Complex x, Complex y) { return x + y; });
}
ComplexField sub(const ComplexField& a, const ComplexField& b) {
  return binary_op(a, b, +[](Complex x, Complex y) { return x - y; });
}
ComplexField multiply(const ComplexField& a, const ComplexField& b) {
  return binary_op(a, b, +[](Complex x, Complex y) { return x * y; });
}
ComplexField scale(const ComplexField& a, Complex factor) {
  ComplexField out = a;
  for (auto& v : out.values()) v *= factor;
  return out;
}
ComplexField conjugate(const ComplexField& a) {
  ComplexField out = a;
  for (auto& v : out.values()) v = std::conj(v);
  return out;
}

double sup_abs(const ComplexField& u, double radius_cap) {
  const DiskGrid& g = u.grid();
  const int m = u.trusted_margin();
  double best = 0.0;
  for (int iy = m; iy < g.n - m; ++iy) {
    for (int ix = m; ix < g.n - m; ++ix) {
      if (std::abs(g.node(ix, iy)) > radius_cap) continue;
      best = std::max(best, std::abs(u.at(ix, iy)));
    }
  }
  return best;
}

double sup_abs_diff(const ComplexField& u, const ComplexField& v, double radius_cap) {
  if (!(u.grid() == v.grid())) throw DomainError("sup_abs_diff: grid mismatch");
  const DiskGrid& g = u.grid();
  const int m = std::max(u.trusted_margin(), v.trusted_margin());
  double best = 0.0;
  for (int iy = m; iy < g.n - m; ++iy) {
    for (int ix = m; ix < g.n - m; ++ix) {
      if (std::abs(g.node(ix, iy)) > radius_cap) continue;
      best = std::max(best, std::abs(u.at(ix, iy) - v.at(ix, iy)));
    }
  }
  return best;
}

double l2_norm(const ComplexField& u) {
  const double h = u.grid().spacing();
  double acc = 0.0;
  for (const Complex& v : u.values()) acc += std::norm(v);
  return std::sqrt(acc * h * h);
}

namespace {
Complex wirtinger_fd_once(const std::function<Complex(Complex)>& fn, Complex z0, int p,
                          int q, double step) {
  if (p == 0 && q == 0) return fn(z0);
  auto reduced = [&](Complex z) {
    return p > 0 ? wirtinger_fd_once(fn, z, p - 1, q, step)
                 : wirtinger_fd_once(fn, z, p, q - 1, step);
  };
  const Complex ex(step, 0.0), ey(0.0, step);
  const Complex dx = (reduced(z0 + ex) - reduced(z0 - ex)) / (2.0 * step);
  const Complex dy = (reduced(z0 + ey) - reduced(z0 - ey)) / (2.0 * step);
  const bool wrt_z = p > 0;
  return wrt_z ? 0.5 * (dx - Complex(0, 1) * dy) : 0.5 * (dx + Complex(0, 1) * dy);
}
}  // namespace

Complex wirtinger_fd(const std::function<Complex(Complex)>& fn, Complex z0, int p, int q,
                     double step) {
  if (p < 0 || q < 0 || p + q > 6) throw DomainError("wirtinger_fd: order out of range");
  if (p == 0 && q == 0) return fn(z0);
  // One Richardson pass on the composed second-order stencils.
  const Complex coarse = wirtinger_fd_once(fn, z0, p, q, step);
  const Complex fine = wirtinger_fd_once(fn, z0, p, q, step / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

void write_field_csv(const ComplexField& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("write_field_csv: cannot open " + path);
  out << "# n=" << u.grid().n << " half_width=" << u.grid().half_width << "\n";
  char buf[80];
  for (int iy = 0; iy < u.grid().n; ++iy) {
    for (int ix = 0; ix < u.grid().n; ++ix) {
      const Complex v = u.at(ix, iy);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", v.real(), v.imag());
      out << buf;
    }
  }
}

void write_field_binary(const ComplexField& u, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("write_field_binary: cannot open " + path);
  const std::int32_t n = u.grid().n;
  const double L = u.grid().half_width;
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&L), sizeof(L));
  out.write(reinterpret_cast<const char*>(u.values().data()),
            static_cast<std::streamsize>(u.values().size() * sizeof(Complex)));
}

}  // namespace beltrami
