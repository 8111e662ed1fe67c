#include "beltrami/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace beltrami {

void SeminormTable::append(double scale_r, double value, int pairs) {
  if (!rows.empty() && scale_r >= rows.back().scale_r)
    throw DomainError("SeminormTable: scales must be strictly decreasing");
  if (!std::isfinite(value)) throw DomainError("SeminormTable: non-finite value");
  rows.push_back({scale_r, value, pairs});
}

Complex ClosedFormProbe::deriv(Complex z, int p, int q) const {
  if (p == 0 && q == 0) return fn_(z);
  if (exact_) return exact_(z, p, q);
  return wirtinger_fd(fn_, z, p, q, std::abs(z) / 64.0);
}

SeriesProbe::SeriesProbe(const LogPowerSeries& series, int max_order)
    : max_order_(max_order) {
  derivs_.reserve((max_order + 1) * (max_order + 1));
  for (int p = 0; p <= max_order; ++p)
    for (int q = 0; q <= max_order; ++q) derivs_.push_back(series.derivative(p, q));
}

Complex SeriesProbe::deriv(Complex z, int p, int q) const {
  if (p < 0 || q < 0 || p > max_order_ || q > max_order_)
    throw DomainError("SeriesProbe: derivative order out of range");
  return derivs_[static_cast<std::size_t>(p) * (max_order_ + 1) + q].eval(z);
}

GridProbe::GridProbe(const ComplexField& u, int max_order)
    : max_order_(max_order), spacing_(u.grid().spacing()) {
  derivs_.reserve((max_order + 1) * (max_order + 1));
  for (int p = 0; p <= max_order; ++p) {
    ComplexField dp = p == 0 ? u : differentiate(u, Dir::Z, p);
    for (int q = 0; q <= max_order; ++q) {
      derivs_.push_back(q == 0 ? dp : differentiate(dp, Dir::Zbar, q));
    }
  }
}

Complex GridProbe::snap(Complex z) const {
  const DiskGrid& g = derivs_.front().grid();
  const double h = g.spacing();
  const int ix = static_cast<int>(std::lround((z.real() + g.half_width) / h));
  const int iy = static_cast<int>(std::lround((z.imag() + g.half_width) / h));
  return g.node(std::clamp(ix, 0, g.n - 1), std::clamp(iy, 0, g.n - 1));
}

Complex GridProbe::deriv(Complex z, int p, int q) const {
  if (p < 0 || q < 0 || p > max_order_ || q > max_order_)
    throw DomainError("GridProbe: derivative order out of range");
  const ComplexField& f = derivs_[static_cast<std::size_t>(p) * (max_order_ + 1) + q];
  const DiskGrid& g = f.grid();
  const double h = g.spacing();
  const int ix = static_cast<int>(std::lround((z.real() + g.half_width) / h));
  const int iy = static_cast<int>(std::lround((z.imag() + g.half_width) / h));
  if (ix < 0 || iy < 0 || ix >= g.n || iy >= g.n)
    throw DomainError("GridProbe: point outside grid");
  return f.at(ix, iy);
}

namespace {

std::uint64_t scale_seed(std::uint64_t seed, int j, std::uint64_t salt) {
  return seed ^ (0x9e3779b97f4a7c15ULL * (j + 1)) ^ salt;
}

}  // namespace

SeminormTable holder_seminorm(const ProbeEvaluator& u, int order_m, double alpha,
                              const ProbeSet& probes, double sep_lo_frac,
                              double sep_hi_frac) {
  if (order_m < 0 || order_m > 4) throw DomainError("holder_seminorm: order out of range");
  if (alpha <= 0.0 || alpha > 1.0) throw DomainError("holder_seminorm: alpha in (0, 1]");
  if (!(sep_lo_frac > 0.0) || !(sep_hi_frac > sep_lo_frac) || sep_hi_frac > 2.0)
    throw DomainError("holder_seminorm: bad separation band");
  SeminormTable table;
  for (int j = probes.j_min; j <= probes.j_max; ++j) {
    const double r = probes.radius(j);
    SplitMix64 rng(scale_seed(probes.seed, j, 0x11));
    double worst = 0.0;
    int used = 0;
    for (int t = 0; t < probes.pairs; ++t) {
      Complex z1 = std::polar(rng.uniform(r, 2.0 * r), rng.uniform(0.0, 2.0 * kPi));
      Complex z2 =
          z1 + std::polar(rng.uniform(sep_lo_frac * r, sep_hi_frac * r),
                          rng.uniform(0.0, 2.0 * kPi));
      z1 = u.snap(z1);
      z2 = u.snap(z2);
      const double sep = std::abs(z2 - z1);
      const double r1 = std::abs(z1), r2 = std::abs(z2);
      if (sep < std::max(1e-300, 0.9 * u.min_separation())) continue;
      if (sep < sep_lo_frac * r / 2.0 || sep > 1.3 * sep_hi_frac * r) continue;
      if (r1 < 0.9 * r || r1 > 2.2 * r || r2 < 0.9 * r || r2 > 2.2 * r) continue;
      for (int p = 0; p <= order_m; ++p) {
        const int q = order_m - p;
        const double quot =
            std::abs(u.deriv(z1, p, q) - u.deriv(z2, p, q)) / std::pow(sep, alpha);
        worst = std::max(worst, quot);
      }
      ++used;
    }
    table.append(r, worst, used);
  }
  return table;
}

SeminormTable zygmund_seminorm(const ProbeEvaluator& u, int order_m, const ProbeSet& probes) {
  if (order_m < 0 || order_m > 4) throw DomainError("zygmund_seminorm: order out of range");
  SeminormTable table;
  for (int j = probes.j_min; j <= probes.j_max; ++j) {
    const double r = probes.radius(j);
    SplitMix64 rng(scale_seed(probes.seed, j, 0x22));
    double worst = 0.0;
    int used = 0;
    for (int t = 0; t < probes.pairs; ++t) {
      Complex z = std::polar(rng.uniform(r, 2.0 * r), rng.uniform(0.0, 2.0 * kPi));
      Complex step = std::polar(rng.uniform(r / 4.0, r), rng.uniform(0.0, 2.0 * kPi));
      z = u.snap(z);
      const Complex zp = u.snap(z + step), zm = u.snap(z - step);
      // After snapping, keep the second difference centered.
      const Complex hp = zp - z, hm = z - zm;
      const double hlen = std::abs(hp);
      if (hlen < std::max(1e-300, 0.9 * u.min_separation())) continue;
      if (std::abs(hp - hm) > 1e-12 * hlen) continue;  // snapped asymmetrically
      if (hlen < r / 8.0 || hlen > 1.3 * r) continue;
      for (int p = 0; p <= order_m; ++p) {
        const int q = order_m - p;
        const Complex second =
            u.deriv(zp, p, q) - 2.0 * u.deriv(z, p, q) + u.deriv(zm, p, q);
        worst = std::max(worst, std::abs(second) / hlen);
      }
      ++used;
    }
    table.append(r, worst, used);
  }
  return table;
}

LogFit fit_sqrt_log(const SeminormTable& table) {
  const std::size_t n = table.rows.size();
  if (n < 5) throw DomainError("fit_sqrt_log: need at least 5 scales");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const SeminormRow& row : table.rows) {
    const double x = std::sqrt(-std::log(row.scale_r));
    sx += x;
    sy += row.value;
    sxx += x * x;
    sxy += x * row.value;
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12) throw DomainError("fit_sqrt_log: degenerate design matrix");
  LogFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (const SeminormRow& row : table.rows) {
    const double x = std::sqrt(-std::log(row.scale_r));
    ss_res += std::pow(row.value - (fit.slope * x + fit.intercept), 2);
    ss_tot += std::pow(row.value - ybar, 2);
  }
  fit.r2 = ss_tot < 1e-300 ? (ss_res < 1e-300 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
  fit.window_j_min = static_cast<int>(std::lround(-std::log2(table.rows.front().scale_r)));
  fit.window_j_max = static_cast<int>(std::lround(-std::log2(table.rows.back().scale_r)));
  return fit;
}

DivergenceClass classify_divergence(const SeminormTable& table) {
  const std::size_t n = table.rows.size();
  if (n < 4) throw DomainError("classify_divergence: need at least 4 scales");
  double peak = 0.0;
  for (const SeminormRow& r : table.rows) peak = std::max(peak, std::abs(r.value));
  if (peak < 1e-12) return DivergenceClass::Bounded;
  std::vector<double> inc;
  for (std::size_t i = 1; i < n; ++i)
    inc.push_back(table.rows[i].value - table.rows[i - 1].value);
  std::vector<double> pos = inc;
  std::sort(pos.begin(), pos.end());
  const double median_inc = pos[pos.size() / 2];
  if (median_inc <= 0.02 * peak) return DivergenceClass::Bounded;
  std::vector<double> ratios;
  for (std::size_t i = 1; i < inc.size(); ++i)
    if (inc[i - 1] > 1e-14 && inc[i] > 1e-14) ratios.push_back(inc[i] / inc[i - 1]);
  if (ratios.empty()) return DivergenceClass::Bounded;
  std::sort(ratios.begin(), ratios.end());
  const double median_ratio = ratios[ratios.size() / 2];
  return median_ratio >= 1.25 ? DivergenceClass::PowerLaw : DivergenceClass::SqrtLog;
}

LemmaBlowupResult lemma_blowup_experiment(const CounterexampleCoefficient& coeff,
                                          const ProbeSet& probes, const QuadratureSpec& quad,
                                          int jobs) {
  const int k = coeff.k();
  LemmaBlowupResult result;
  result.k = k;
  double target = 1.0;
  for (int i = 2; i <= k + 1; ++i) target *= i;
  result.slope_target = target / 100.0;

  auto density = [&coeff](Complex z) { return coeff.chi_a_zbar(z); };
  const double support = CounterexampleCoefficient::chi_outer;

  const int scales = probes.scale_count();
  const int per_scale = probes.angles;
  std::vector<Complex> values(static_cast<std::size_t>(scales) * per_scale);
  std::vector<Complex> points(values.size());
  for (int s = 0; s < scales; ++s) {
    const double r = probes.radius(probes.j_min + s);
    for (int i = 0; i < per_scale; ++i)
      points[static_cast<std::size_t>(s) * per_scale + i] =
          std::polar(r, 2.0 * kPi * (i + 0.5) / per_scale);
  }

  const int n_threads = std::max(1, std::min<int>(jobs, 16));
  auto worker = [&](int tid) {
    for (std::size_t idx = tid; idx < points.size(); idx += n_threads)
      values[idx] =
          probe_transform(TransformKind::DzInv, density, support, points[idx], quad, k);
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  const LogPowerSeries surrogate = coeff.b_series().derivative(0, k + 1).scaled(0.01);
  for (int s = 0; s < scales; ++s) {
    const double r = probes.radius(probes.j_min + s);
    double m_u = 0.0, m_s = 0.0;
    for (int i = 0; i < per_scale; ++i) {
      const std::size_t idx = static_cast<std::size_t>(s) * per_scale + i;
      m_u = std::max(m_u, std::abs(values[idx]));
      m_s = std::max(m_s, std::abs(surrogate.eval(points[idx])));
    }
    result.transform_table.append(r, m_u, per_scale);
    result.surrogate_table.append(r, m_s, per_scale);
  }
  result.transform_fit = fit_sqrt_log(result.transform_table);
  result.surrogate_fit = fit_sqrt_log(result.surrogate_table);
  return result;
}

}  // namespace beltrami
