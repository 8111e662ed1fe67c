#include "beltrami/solver.hpp"

#include <algorithm>
#include <cmath>

#include "beltrami/transforms.hpp"

namespace beltrami {

Chart solve_beltrami(const ComplexField& mu, double tol, int max_iter) {
  const DiskGrid& grid = mu.grid();
  const double mu_sup = sup_abs(mu, 2.0 * grid.half_width);
  if (mu_sup >= 0.25)
    throw DomainError("solve_beltrami: sup|mu| must be < 1/4 for the Neumann series");
  if (!is_disk_supported(mu))
    throw DomainError("solve_beltrami: mu must vanish outside the unit disk");

  Chart chart{ComplexField(grid), ComplexField(grid), ComplexField(grid),
              ComplexField(grid)};

  ComplexField h(grid);  // current iterate, supported in supp mu
  std::vector<double> increments;
  int iterations = 0;
  bool converged = false;
  while (iterations < max_iter) {
    ++iterations;
    // next = mu (1 + S h); the first iterate starts from h == 0.
    ComplexField next = iterations == 1 ? ComplexField(grid) : beurling(h);
    for (std::size_t i = 0; i < next.values().size(); ++i)
      next.values()[i] = mu.values()[i] * (1.0 + next.values()[i]);
    const double inc = sup_abs_diff(next, h, 2.0 * grid.half_width);
    increments.push_back(inc);
    h = std::move(next);
    if (inc <= tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("solve_beltrami: max_iter exceeded", increments.back());

  ComplexField w = cauchy_green(TransformKind::DzbarInv, h);
  for (int iy = 0; iy < grid.n; ++iy)
    for (int ix = 0; ix < grid.n; ++ix) w.at(ix, iy) += grid.node(ix, iy);

  // Normalize so the measured w_z at the origin node is exactly 1.
  ComplexField w_z = differentiate(w, Dir::Z);
  const Complex origin_wz = w_z.at(grid.n / 2, grid.n / 2);
  if (std::abs(origin_wz) < 1e-8)
    throw ConvergenceError("solve_beltrami: w_z vanishes at the origin", std::abs(origin_wz));
  chart.w = scale(w, 1.0 / origin_wz);
  chart.w_z = scale(w_z, 1.0 / origin_wz);
  chart.w_zbar = scale(differentiate(w, Dir::Zbar), 1.0 / origin_wz);
  chart.iterations = iterations;
  chart.increments = std::move(increments);

  // Residual of the chart equation from the measured derivative fields.
  double resid = 0.0;
  const int margin = std::max(chart.w_z.trusted_margin(), chart.w_zbar.trusted_margin());
  for (int iy = margin; iy < grid.n - margin; ++iy) {
    for (int ix = margin; ix < grid.n - margin; ++ix) {
      if (std::abs(grid.node(ix, iy)) > Chart::trusted_radius) continue;
      resid = std::max(resid, std::abs(chart.w_zbar.at(ix, iy) -
                                       mu.at(ix, iy) * chart.w_z.at(ix, iy)));
    }
  }
  chart.residual = resid;
  chart.f = compute_f(chart.w_z, &chart.log_branch_fallback);
  return chart;
}

ComplexField compute_f(const ComplexField& w_z, bool* used_fallback) {
  const DiskGrid& grid = w_z.grid();
  double min_abs = 1e300, max_dev = 0.0;
  for (int iy = 0; iy < grid.n; ++iy) {
    for (int ix = 0; ix < grid.n; ++ix) {
      if (std::abs(grid.node(ix, iy)) > Chart::trusted_radius) continue;
      const Complex v = w_z.at(ix, iy);
      min_abs = std::min(min_abs, std::abs(v));
      max_dev = std::max(max_dev, std::abs(v - 1.0));
    }
  }
  if (min_abs <= 1e-12)
    throw ConvergenceError("compute_f: w_z vanishes on the trusted region, log branch undefined",
                           min_abs);
  ComplexField f(grid);
  if (max_dev < 1.0) {
    if (used_fallback) *used_fallback = false;
    for (std::size_t i = 0; i < f.values().size(); ++i)
      f.values()[i] = std::log(w_z.values()[i]);
  } else {
    // Argument continuation: center node outward along the center row, then
    // along each column, accumulating phase increments.
    if (used_fallback) *used_fallback = true;
    const int c = grid.n / 2;
    std::vector<double> arg(static_cast<std::size_t>(grid.n) * grid.n, 0.0);
    auto unwrap_step = [&](int ix, int iy, int from_ix, int from_iy) {
      const Complex ratio = w_z.at(ix, iy) / w_z.at(from_ix, from_iy);
      arg[grid.index(ix, iy)] = arg[grid.index(from_ix, from_iy)] + std::arg(ratio);
    };
    arg[grid.index(c, c)] = std::arg(w_z.at(c, c));
    for (int ix = c + 1; ix < grid.n; ++ix) unwrap_step(ix, c, ix - 1, c);
    for (int ix = c - 1; ix >= 0; --ix) unwrap_step(ix, c, ix + 1, c);
    for (int ix = 0; ix < grid.n; ++ix) {
      for (int iy = c + 1; iy < grid.n; ++iy) unwrap_step(ix, iy, ix, iy - 1);
      for (int iy = c - 1; iy >= 0; --iy) unwrap_step(ix, iy, ix, iy + 1);
    }
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix)
        f.at(ix, iy) = Complex(std::log(std::abs(w_z.at(ix, iy))), arg[grid.index(ix, iy)]);
  }
  f.set_trusted_margin(w_z.trusted_margin());
  return f;
}

double eq2_residual_sup(const Chart& chart, const CounterexampleCoefficient& coeff,
                        double r_lo, double r_hi) {
  const DiskGrid& grid = chart.f.grid();
  ComplexField f_z = differentiate(chart.f, Dir::Z);
  ComplexField f_zbar = differentiate(chart.f, Dir::Zbar);
  double worst = 0.0;
  const int margin = f_z.trusted_margin();
  for (int iy = margin; iy < grid.n - margin; ++iy) {
    for (int ix = margin; ix < grid.n - margin; ++ix) {
      const Complex z = grid.node(ix, iy);
      const double r = std::abs(z);
      if (r < r_lo || r > r_hi) continue;
      const Complex abar = std::conj(coeff.a(z));
      const Complex abar_z = std::conj(coeff.a_zbar(z));
      worst = std::max(worst, std::abs(f_zbar.at(ix, iy) + abar * f_z.at(ix, iy) + abar_z));
    }
  }
  return worst;
}

DecompositionInput decomposition_input(const CounterexampleCoefficient& coeff) {
  DecompositionInput in;
  in.a = [&coeff](Complex z) { return coeff.a(z); };
  in.a_zbar = [&coeff](Complex z) { return coeff.a_zbar(z); };
  in.chi = [&coeff](double r) { return coeff.chi(r); };
  in.chi_z = [&coeff](Complex z) { return coeff.chi_z(z); };
  in.chi_zbar = [&coeff](Complex z) { return coeff.chi_zbar(z); };
  return in;
}

Decomposition decompose(const Chart& chart, const DecompositionInput& input,
                        double rel_tol) {
  const DiskGrid& grid = chart.f.grid();
  const double cap = Chart::trusted_radius;

  ComplexField abar = sample([&](Complex z) { return std::conj(input.a(z)); }, grid);
  ComplexField abar_z = sample([&](Complex z) { return std::conj(input.a_zbar(z)); }, grid);
  ComplexField chi_field =
      sample([&](Complex z) { return Complex(input.chi(std::abs(z)), 0.0); }, grid);

  Decomposition dec{ComplexField(grid), ComplexField(grid), ComplexField(grid),
                    ComplexField(grid), ComplexField(grid), ComplexField(grid)};
  dec.g = multiply(chi_field, chart.f);
  dec.h = sample([](Complex z) { return z; }, grid);
  for (std::size_t i = 0; i < dec.h.values().size(); ++i)
    dec.h.values()[i] = std::conj(dec.h.values()[i]) * dec.g.values()[i];
  dec.h.set_trusted_margin(dec.g.trusted_margin());

  ComplexField g_z = differentiate(dec.g, Dir::Z);
  ComplexField g_zbar = differentiate(dec.g, Dir::Zbar);

  // chi_zbar f + chi_z abar f, supported on the cutoff transition ring.
  ComplexField cutoff_data(grid);
  for (int iy = 0; iy < grid.n; ++iy) {
    for (int ix = 0; ix < grid.n; ++ix) {
      const Complex z = grid.node(ix, iy);
      cutoff_data.at(ix, iy) =
          (input.chi_zbar(z) + input.chi_z(z) * abar.at(ix, iy)) * chart.f.at(ix, iy);
    }
  }

  ComplexField gain_data = multiply(abar, g_z);
  ComplexField obstruction_data = multiply(chi_field, abar_z);

  dec.antiholo = sub(dec.g, cauchy_green(TransformKind::DzbarInv, mask_to_disk(g_zbar)));
  dec.smooth_cutoff = cauchy_green(TransformKind::DzbarInv, mask_to_disk(cutoff_data));
  dec.gain = scale(cauchy_green(TransformKind::DzbarInv, mask_to_disk(gain_data)), -1.0);
  dec.obstruction =
      scale(cauchy_green(TransformKind::DzbarInv, mask_to_disk(obstruction_data)), -1.0);

  // Defining equations, measured with the same derivative fields.
  ComplexField h_z = differentiate(dec.h, Dir::Z);
  ComplexField h_zbar = differentiate(dec.h, Dir::Zbar);
  double eq3 = 0.0, eq4 = 0.0, sum_res = 0.0, rhs3_scale = 0.0, rhs4_scale = 0.0;
  const int margin = std::max({g_z.trusted_margin(), h_z.trusted_margin()});
  // Nodes within a few cells of the origin violate the smooth-at-scale-h
  // contract of the order-4 stencils (the data is only C^k there), so the
  // residual sups start at 8h; the band shrinks with refinement.
  const double r_min = 8.0 * grid.spacing();
  for (int iy = margin; iy < grid.n - margin; ++iy) {
    for (int ix = margin; ix < grid.n - margin; ++ix) {
      const Complex z = grid.node(ix, iy);
      if (std::abs(z) > cap || std::abs(z) < r_min) continue;
      const Complex rhs3 = cutoff_data.at(ix, iy) - obstruction_data.at(ix, iy);
      const Complex lhs3 = g_zbar.at(ix, iy) + abar.at(ix, iy) * g_z.at(ix, iy);
      eq3 = std::max(eq3, std::abs(lhs3 - rhs3));
      rhs3_scale = std::max(rhs3_scale, std::abs(rhs3));
      const Complex rhs4 = dec.g.at(ix, iy) + std::conj(z) * rhs3;
      const Complex lhs4 = h_zbar.at(ix, iy) + abar.at(ix, iy) * h_z.at(ix, iy);
      eq4 = std::max(eq4, std::abs(lhs4 - rhs4));
      rhs4_scale = std::max(rhs4_scale, std::abs(rhs4));
      const Complex sum = dec.antiholo.at(ix, iy) + dec.smooth_cutoff.at(ix, iy) +
                          dec.gain.at(ix, iy) + dec.obstruction.at(ix, iy);
      sum_res = std::max(sum_res, std::abs(sum - dec.g.at(ix, iy)));
    }
  }
  dec.eq3_residual = eq3;
  dec.eq4_residual = eq4;
  dec.sum_residual = sum_res;

  const double g_scale = sup_abs(dec.g, cap);
  const double floor = 1e-14;
  if (eq3 > rel_tol * rhs3_scale + floor || eq4 > rel_tol * rhs4_scale + floor ||
      sum_res > rel_tol * g_scale + floor) {
    throw ConvergenceError(
        "decompose: residual above tolerance (eq3=" + std::to_string(eq3) +
            ", eq4=" + std::to_string(eq4) + ", sum=" + std::to_string(sum_res) + ")",
        std::max({eq3, eq4, sum_res}));
  }
  return dec;
}

}  // namespace beltrami
