#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "beltrami/coefficient.hpp"
#include "beltrami/transforms.hpp"

namespace beltrami {

namespace {

struct GaussRule {
  std::vector<double> x, w;  // nodes/weights on [-1, 1]
};

const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = rule.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

using Density = std::function<Complex(Complex)>;

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

struct ProbeContext {
  TransformKind kind;
  const Density* phi;
  Complex z0;
  int m;               // derivative order applied to the kernel
  double patch_d;      // patch radius about z0
};

double bump_weight(double s, double d) {
  // 1 for s <= d/2, 0 for s >= d, smooth in between.
  return smooth_step((d - s) / (d / 2.0));
}

// Kernel with m derivatives in the transform's own variable, as a function of
// the source point zeta (coordinates about the origin).
Complex kernel_at(const ProbeContext& ctx, Complex zeta) {
  const double c = (ctx.m % 2 == 0 ? 1.0 : -1.0) * factorial(ctx.m) / kPi;
  const Complex den = ctx.kind == TransformKind::DzInv
                          ? std::conj(ctx.z0) - std::conj(zeta)
                          : ctx.z0 - zeta;
  Complex p = 1.0;
  for (int i = 0; i <= ctx.m; ++i) p *= den;
  return c / p;
}

// Value plus an L1 magnitude proxy: the sum of term magnitudes before
// cancellation, which bounds the roundoff floor of the result.
struct QuadValue {
  Complex value{0.0, 0.0};
  double l1 = 0.0;
};

// Patch integral in polar coordinates about z0; the kernel singularity
// reduces to rho^{-m} e^{+-i(m+1)alpha}, which the periodic trapezoid rule
// integrates with spectral accuracy (the divergent angular modes cancel).
QuadValue patch_integral(const ProbeContext& ctx, int n_rad, int n_ang) {
  const GaussRule& gr = gauss_rule(n_rad);
  const double d = ctx.patch_d;
  const double mfac = factorial(ctx.m);
  const double sign_ang = ctx.kind == TransformKind::DzInv ? 1.0 : -1.0;
  QuadValue out;
  for (int ir = 0; ir < n_rad; ++ir) {
    const double rho = 0.5 * d * (gr.x[ir] + 1.0);
    const double wr = 0.5 * d * gr.w[ir];
    const double eta = bump_weight(rho, d);
    if (eta == 0.0) continue;
    Complex ang = 0.0;
    double ang_l1 = 0.0;
    for (int ia = 0; ia < n_ang; ++ia) {
      const double alpha = 2.0 * kPi * ia / n_ang;
      const Complex zeta = ctx.z0 + std::polar(rho, alpha);
      const Complex term = (*ctx.phi)(zeta) * std::polar(1.0, sign_ang * (ctx.m + 1) * alpha);
      ang += term;
      ang_l1 += std::abs(term);
    }
    const double fac = wr * eta * mfac / kPi * std::pow(rho, -ctx.m) * 2.0 * kPi / n_ang;
    out.value += -fac * ang;
    out.l1 += fac * ang_l1;
  }
  return out;
}

// Annulus integral about the origin in (log rho, theta) coordinates with the
// patch bump removed.
QuadValue annulus_integral(const ProbeContext& ctx, double r_lo, double r_hi, int n_rad,
                           int n_ang) {
  const GaussRule& gr = gauss_rule(n_rad);
  const double s_lo = std::log(r_lo), s_hi = std::log(r_hi);
  QuadValue out;
  for (int ir = 0; ir < n_rad; ++ir) {
    const double s = 0.5 * (s_hi - s_lo) * (gr.x[ir] + 1.0) + s_lo;
    const double ws = 0.5 * (s_hi - s_lo) * gr.w[ir];
    const double rho = std::exp(s);
    Complex ang = 0.0;
    double ang_l1 = 0.0;
    for (int ia = 0; ia < n_ang; ++ia) {
      const double theta = 2.0 * kPi * ia / n_ang;
      const Complex zeta = std::polar(rho, theta);
      const double cut = 1.0 - bump_weight(std::abs(zeta - ctx.z0), ctx.patch_d);
      if (cut == 0.0) continue;
      const Complex term = (*ctx.phi)(zeta) * kernel_at(ctx, zeta) * cut;
      ang += term;
      ang_l1 += std::abs(term);
    }
    const double fac = ws * rho * rho * 2.0 * kPi / n_ang;
    out.value += fac * ang;
    out.l1 += fac * ang_l1;
  }
  return out;
}

// Refine by doubling both node counts until two levels agree, or until the
// disagreement falls to the roundoff floor implied by the term magnitudes.
template <typename F>
Complex refine(F&& eval, const QuadratureSpec& spec, double scale_hint,
               const char* what) {
  int n_rad = spec.initial_radial;
  int n_ang = spec.initial_angular;
  QuadValue prev = eval(n_rad, n_ang);
  double prev_delta = -1.0;
  for (int level = 0; level < spec.max_doublings; ++level) {
    n_rad *= 2;
    n_ang *= 2;
    const QuadValue cur = eval(n_rad, n_ang);
    const double delta = std::abs(cur.value - prev.value);
    const double tol = std::max({0.25 * spec.rel_tol * std::abs(cur.value),
                                 0.25 * spec.rel_tol * scale_hint, spec.abs_floor,
                                 1e-13 * cur.l1});
    if (delta <= tol) return cur.value;
    if (prev_delta >= 0.0 && delta > 0.5 * prev_delta && delta > 16.0 * tol && level >= 3) {
      throw ConvergenceError(std::string("probe_transform: refinement stalled in ") + what,
                             delta);
    }
    prev = cur;
    prev_delta = delta;
  }
  throw ConvergenceError(std::string("probe_transform: out of refinement levels in ") + what,
                         prev_delta < 0 ? std::abs(prev.value) : prev_delta);
}

}  // namespace

Complex probe_transform(TransformKind kind, const std::function<Complex(Complex)>& phi,
                        double support_radius, Complex point, const QuadratureSpec& spec,
                        int deriv_order) {
  if (kind != TransformKind::DzInv && kind != TransformKind::DzbarInv)
    throw DomainError("probe_transform: kind must be DzInv or DzbarInv");
  if (deriv_order < 0 || deriv_order > 4)
    throw DomainError("probe_transform: deriv_order must be in 0..4");
  const double r0 = std::abs(point);
  if (r0 == 0.0 || r0 >= 0.125)
    throw DomainError("probe_transform: point must satisfy 0 < |point| < 1/8");
  if (support_radius <= 0.0 || support_radius > 1.0)
    throw DomainError("probe_transform: support radius must be in (0, 1]");

  ProbeContext ctx;
  ctx.kind = kind;
  ctx.phi = &phi;
  ctx.z0 = point;
  ctx.m = deriv_order;
  ctx.patch_d = 0.5 * r0;

  Complex acc = refine(
      [&](int nr, int na) { return patch_integral(ctx, nr, na); }, spec, 0.0, "patch");

  // Dyadic annuli from the support edge inward.  Below the patch the kernel
  // magnitude is controlled by the distance to `point`, so once the remaining
  // disk contributes provably less than the tolerance we stop.
  const double kernel_cap =
      factorial(deriv_order) / kPi *
      std::pow(2.0 / r0, deriv_order + 1);  // valid on |zeta| <= r0/2
  double r_hi = support_radius;
  for (int ring = 0; ring < 220; ++ring) {
    const double r_lo = r_hi / 2.0;
    acc += refine(
        [&](int nr, int na) { return annulus_integral(ctx, r_lo, r_hi, nr, na); }, spec,
        std::abs(acc), "annulus");
    r_hi = r_lo;
    if (r_hi <= 0.25 * r0) {
      double phi_max = 0.0;
      for (double ring : {0.999, 0.7, 0.4, 0.1})
        for (int i = 0; i < 16; ++i)
          phi_max = std::max(phi_max,
                             std::abs(phi(std::polar(ring * r_hi, 2.0 * kPi * i / 16.0))));
      const double tail = 2.0 * phi_max * kPi * r_hi * r_hi * kernel_cap;
      if (tail <= std::max(0.05 * spec.rel_tol * std::abs(acc), spec.abs_floor)) return acc;
    }
  }
  throw ConvergenceError("probe_transform: tail did not become negligible", std::abs(acc));
}

}  // namespace beltrami
