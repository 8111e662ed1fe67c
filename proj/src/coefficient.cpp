#include "beltrami/coefficient.hpp"

#include <algorithm>
#include <cmath>

namespace beltrami {

namespace {
double sigma(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double sigma_deriv(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }
}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double s = sigma(t);
  return s / (s + sigma(1.0 - t));
}

double smooth_step_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double s = sigma(t), u = sigma(1.0 - t);
  const double d = s + u;
  return (sigma_deriv(t) * u + s * sigma_deriv(1.0 - t)) / (d * d);
}

CounterexampleCoefficient::CounterexampleCoefficient(int k) : k_(k) {
  if (k < 1 || k > 3)
    throw DomainError("CounterexampleCoefficient: supported k range is 1..3");
  b_series_ = LogPowerSeries::conj_power_root_log(k + 1);
  a_series_ = b_series_.dz().scaled(0.01);
  a_z_series_ = a_series_.dz();
  a_zbar_series_ = a_series_.dzbar();
}

double CounterexampleCoefficient::taper(double r) const {
  return smooth_step((taper_outer - r) / 0.25);
}
double CounterexampleCoefficient::taper_deriv(double r) const {
  return -4.0 * smooth_step_deriv((taper_outer - r) / 0.25);
}
double CounterexampleCoefficient::chi(double r) const {
  return smooth_step((chi_outer - r) / 0.25);
}

Complex CounterexampleCoefficient::chi_z(Complex z) const {
  const double r = std::abs(z);
  if (r == 0.0 || r <= chi_plateau || r >= chi_outer) return 0.0;
  const double dchi = -4.0 * smooth_step_deriv((chi_outer - r) / 0.25);
  return dchi * std::conj(z) / (2.0 * r);
}
Complex CounterexampleCoefficient::chi_zbar(Complex z) const {
  const double r = std::abs(z);
  if (r == 0.0 || r <= chi_plateau || r >= chi_outer) return 0.0;
  const double dchi = -4.0 * smooth_step_deriv((chi_outer - r) / 0.25);
  return dchi * z / (2.0 * r);
}

Complex CounterexampleCoefficient::a(Complex z) const {
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;
  if (r >= taper_outer) return 0.0;
  const Complex core = a_series_.eval(z);
  return r <= plateau_radius ? core : core * taper(r);
}

Complex CounterexampleCoefficient::a_z(Complex z) const {
  const double r = std::abs(z);
  if (r == 0.0 || r >= taper_outer) return 0.0;
  if (r <= plateau_radius) return a_z_series_.eval(z);
  return a_z_series_.eval(z) * taper(r) +
         a_series_.eval(z) * taper_deriv(r) * std::conj(z) / (2.0 * r);
}

Complex CounterexampleCoefficient::a_zbar(Complex z) const {
  const double r = std::abs(z);
  if (r == 0.0 || r >= taper_outer) return 0.0;
  if (r <= plateau_radius) return a_zbar_series_.eval(z);
  return a_zbar_series_.eval(z) * taper(r) +
         a_series_.eval(z) * taper_deriv(r) * z / (2.0 * r);
}

Complex CounterexampleCoefficient::a_deriv(Complex z, int p, int q) const {
  if (p < 0 || q < 0 || p + q > k_ + 2)
    throw DomainError("a_deriv: order exceeds k+2");
  const double r = std::abs(z);
  if (r >= taper_outer + 0.05) return 0.0;
  if (r <= 0.45) {
    if (r == 0.0 && p + q > 0) {
      // All requested orders have vanishing limits only while p+q <= k-1;
      // higher ones are unbounded at 0 and must not be asked for there.
      if (p + q > k_ - 1) throw DomainError("a_deriv: derivative unbounded at z = 0");
    }
    return a_series_.derivative(p, q).eval(z);
  }
  // Across the taper the function is C^inf with tame derivatives; composed
  // centered differences with a fixed step are adequate there.
  return wirtinger_fd([this](Complex w) { return a(w); }, z, p, q, 4e-3);
}

Complex CounterexampleCoefficient::b(Complex z) const { return b_series_.eval(z); }

Complex CounterexampleCoefficient::b_deriv(Complex z, int p, int q) const {
  if (p < 0 || q < 0 || p + q > k_ + 2)
    throw DomainError("b_deriv: order exceeds k+2");
  return b_series_.derivative(p, q).eval(z);
}

Complex CounterexampleCoefficient::chi_a_zbar(Complex z) const {
  const double r = std::abs(z);
  if (r == 0.0 || r >= chi_outer) return 0.0;
  return chi(r) * a_zbar(z);
}

bool PropertyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PropertyCheck& c) { return c.pass; });
}

namespace {

// max over the first/last `take` scales of per-scale maxima.
double window_max(const std::vector<double>& per_scale, bool from_end, int take) {
  double best = 0.0;
  const int n = static_cast<int>(per_scale.size());
  for (int i = 0; i < std::min(take, n); ++i)
    best = std::max(best, per_scale[from_end ? n - 1 - i : i]);
  return best;
}

PropertyCheck decay_audit(const std::function<Complex(Complex)>& fn, int max_order,
                          const ProbeSet& probes, const std::string& name) {
  std::vector<double> per_scale;
  for (int j = probes.j_min; j <= probes.j_max; ++j) {
    const double r = probes.radius(j);
    double worst = 0.0;
    for (int i = 0; i < probes.angles; ++i) {
      const double th = 2.0 * kPi * i / probes.angles;
      const Complex z0 = std::polar(r, th);
      for (int p = 0; p <= max_order; ++p) {
        for (int q = 0; p + q <= max_order; ++q) {
          const Complex d = wirtinger_fd(fn, z0, p, q, r / 64.0);
          worst = std::max(worst, std::abs(d));
        }
      }
    }
    per_scale.push_back(worst);
  }
  const double coarse = window_max(per_scale, false, 2);
  const double fine = window_max(per_scale, true, 2);
  PropertyCheck check;
  check.name = name;
  check.measured = fine;
  check.bound = 2.0 * coarse + 1e-9;
  check.pass = std::isfinite(fine) && fine <= check.bound;
  check.detail = "max FD derivative over finest scales vs 2x coarsest";
  return check;
}

}  // namespace

PropertyCheck audit_decay_za(const std::function<Complex(Complex)>& a, int k,
                             const ProbeSet& probes) {
  auto za = [a](Complex z) { return z * a(z); };
  return decay_audit(za, k + 1, probes, "(iii) z*a has bounded derivatives to order k+1");
}

PropertyCheck audit_decay_a_over_z(const std::function<Complex(Complex)>& a, int k,
                                   const ProbeSet& probes) {
  auto aoz = [a](Complex z) { return a(z) / z; };
  return decay_audit(aoz, k - 1, probes, "(iii) a/z has bounded derivatives to order k-1");
}

PropertyReport verify_properties(const CounterexampleCoefficient& coeff,
                                 const DiskGrid& grid, const ProbeSet& probes) {
  PropertyReport report;
  const int k = coeff.k();

  // (i) smoothness away from the origin: derivative magnitudes on dyadic
  // annuli stay finite and tame.
  {
    PropertyCheck c;
    c.name = "(i) a smooth away from origin (derivatives bounded per annulus)";
    c.bound = 1e6;
    double worst = 0.0;
    bool finite = true;
    for (double r_hi : {0.0625, 0.125, 0.25, 0.5, 0.75}) {
      const double r_lo = r_hi / 2.0;
      for (int ring = 0; ring < 3; ++ring) {
        const double r = r_lo + (ring + 0.5) * (r_hi - r_lo) / 3.0;
        for (int i = 0; i < 8; ++i) {
          const Complex z0 = std::polar(r, 2.0 * kPi * (i + 0.37) / 8.0);
          for (int p = 0; p <= k + 2; ++p) {
            for (int q = 0; p + q <= k + 2; ++q) {
              const Complex d = coeff.a_deriv(z0, p, q);
              if (!is_finite(d)) finite = false;
              worst = std::max(worst, std::abs(d));
            }
          }
        }
      }
    }
    c.measured = worst;
    c.pass = finite && worst < c.bound;
    report.checks.push_back(c);
  }

  // (ii) blow-up evidence for the transformed derivative: the closed-form
  // core of d_zbar^k dz^{-1}(chi a_zbar) is dzbar^{k+1} b / 100, which must
  // grow monotonically like sqrt(-log r) along the probe radii.  The full
  // quadrature-backed measurement lives in the blow-up experiment.
  {
    PropertyCheck c;
    c.name = "(ii) transformed derivative diverges (closed-form core grows)";
    std::vector<double> vals;
    for (int j = probes.j_min; j <= probes.j_max; ++j) {
      const double r = probes.radius(j);
      vals.push_back(std::abs(coeff.b_deriv(r, 0, k + 1)) / 100.0);
    }
    int inversions = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
      if (vals[i] < vals[i - 1] * 0.999) ++inversions;
    const double growth = vals.back() / std::max(vals.front(), 1e-300);
    c.measured = growth;
    c.bound = 1.1;  // must grow at least 10% across the window
    c.pass = inversions == 0 && growth >= c.bound;
    c.detail = "growth factor of |dzbar^{k+1} b|/100 across probe radii";
    report.checks.push_back(c);
  }

  // (iii) the two decay conditions, via finite differences along probes.
  report.checks.push_back(
      audit_decay_za([&coeff](Complex z) { return coeff.a(z); }, k, probes));
  report.checks.push_back(
      audit_decay_a_over_z([&coeff](Complex z) { return coeff.a(z); }, k, probes));

  // (iv) compact support in the unit disk: identically zero beyond the taper.
  {
    PropertyCheck c;
    c.name = "(iv) supp a inside unit disk";
    double worst = 0.0;
    const double h = grid.spacing();
    for (int iy = 0; iy < grid.n; ++iy) {
      for (int ix = 0; ix < grid.n; ++ix) {
        const Complex z = grid.node(ix, iy);
        if (std::abs(z) >= CounterexampleCoefficient::taper_outer + h)
          worst = std::max(worst, std::abs(coeff.a(z)));
      }
    }
    for (double r : {0.76, 0.8, 0.9, 0.99, 1.0, 1.2})
      for (int i = 0; i < 32; ++i)
        worst = std::max(worst, std::abs(coeff.a(std::polar(r, 2.0 * kPi * i / 32.0))));
    c.measured = worst;
    c.bound = 0.0;
    c.pass = worst == 0.0;
    report.checks.push_back(c);
  }

  // (v) sup |a| well below delta0.
  {
    PropertyCheck c;
    c.name = "(v) sup|a| < delta0";
    double worst = 0.0;
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix)
        worst = std::max(worst, std::abs(coeff.a(grid.node(ix, iy))));
    for (int ir = 1; ir < 400; ++ir) {
      const double r = ir / 400.0;
      for (int i = 0; i < 64; ++i)
        worst = std::max(worst, std::abs(coeff.a(std::polar(r, 2.0 * kPi * i / 64.0))));
    }
    c.measured = worst;
    c.bound = CounterexampleCoefficient::delta0;
    c.pass = worst < c.bound;
    report.checks.push_back(c);
  }

  return report;
}

}  // namespace beltrami
