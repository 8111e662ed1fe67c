#include "beltrami/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace beltrami {

namespace {

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// Cached in-place c2c plans per (n, sign). FFTW planning is not thread-safe;
// execution through fftw_execute_dft on fresh buffers is.
fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(fftw_mutex());
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Complex> scratch(static_cast<std::size_t>(n) * n);
  fftw_complex* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_2d(n, n, p, p, sign, FFTW_ESTIMATE);
  cache.emplace(key, plan);
  return plan;
}

void fft2(std::vector<Complex>& data, int n, bool inverse) {
  fftw_plan plan = plan_for(n, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  fftw_complex* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
  if (inverse) {
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (Complex& v : data) v *= scale;
  }
}

// Exact integral of 1/zeta over the h x h cell centered at d (0 outside the
// cell).  Stokes reduces the area integral to a boundary loop of
// conj(zeta)/zeta, whose edge integrals have closed forms:
//   edge p -> p+q contributes  conj(q) + (Im(conj(p) q) / q) * 2i? ...
// assembled below; the conj(q) parts cancel around the loop, leaving
//   C(d) = sum_edges Im(conj(p) q) * log((p+q)/p) / q.
// The singular cell integrates to zero by symmetry.
Complex cell_integral_inv_zeta(Complex d, double h) {
  const double half = h / 2.0;
  if (std::abs(d.real()) <= half && std::abs(d.imag()) <= half) return 0.0;
  const Complex c0 = d + Complex(-half, -half);
  const Complex c1 = d + Complex(half, -half);
  const Complex c2 = d + Complex(half, half);
  const Complex c3 = d + Complex(-half, half);
  const Complex corners[5] = {c0, c1, c2, c3, c0};
  Complex acc = 0.0;
  for (int e = 0; e < 4; ++e) {
    const Complex p = corners[e];
    const Complex q = corners[e + 1] - p;
    const double cross = std::imag(std::conj(p) * q);
    acc += cross * std::log((p + q) / p) / q;
  }
  return acc;
}

struct KernelKey {
  int n;
  double half_width;
  TransformKind kind;
  bool operator<(const KernelKey& o) const {
    if (n != o.n) return n < o.n;
    if (half_width != o.half_width) return half_width < o.half_width;
    return kind < o.kind;
  }
};

// FFT of the wrapped cell-integrated weight table, cached per grid and kind.
std::shared_ptr<const std::vector<Complex>> kernel_fft(const DiskGrid& grid,
                                                       TransformKind kind) {
  static std::map<KernelKey, std::shared_ptr<const std::vector<Complex>>> cache;
  static std::mutex cache_mutex;
  KernelKey key{grid.n, grid.half_width, kind};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const int n = grid.n;
  const double h = grid.spacing();
  auto table = std::make_shared<std::vector<Complex>>(static_cast<std::size_t>(n) * n);
  for (int dj = -n / 2; dj < n / 2; ++dj) {
    const int j = (dj + n) % n;
    for (int di = -n / 2; di < n / 2; ++di) {
      const int i = (di + n) % n;
      const Complex d(di * h, dj * h);
      const Complex c = cell_integral_inv_zeta(d, h) / kPi;
      (*table)[static_cast<std::size_t>(j) * n + i] =
          kind == TransformKind::DzbarInv ? c : std::conj(c);
    }
  }
  fft2(*table, n, false);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache[key] = table;
  return table;
}

}  // namespace

bool is_disk_supported(const ComplexField& phi) {
  const DiskGrid& g = phi.grid();
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix)
      if (std::abs(g.node(ix, iy)) > 1.0 + 1e-12 && phi.at(ix, iy) != Complex(0.0, 0.0))
        return false;
  return true;
}

ComplexField mask_to_disk(const ComplexField& phi) {
  ComplexField out = phi;
  const DiskGrid& g = phi.grid();
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix)
      if (std::abs(g.node(ix, iy)) > 1.0 + 1e-12) out.at(ix, iy) = 0.0;
  return out;
}

ComplexField cauchy_green(TransformKind kind, const ComplexField& phi) {
  if (kind != TransformKind::DzInv && kind != TransformKind::DzbarInv)
    throw DomainError("cauchy_green: kind must be DzInv or DzbarInv");
  if (!is_disk_supported(phi))
    throw DomainError("cauchy_green: phi must vanish outside the unit disk (mask it)");
  const DiskGrid& g = phi.grid();
  auto kfft = kernel_fft(g, kind);
  std::vector<Complex> work = phi.values();
  fft2(work, g.n, false);
  for (std::size_t i = 0; i < work.size(); ++i) work[i] *= (*kfft)[i];
  fft2(work, g.n, true);
  ComplexField out(g);
  out.values() = std::move(work);
  out.set_trusted_margin(phi.trusted_margin());
  return out;
}

ComplexField spectral_dz(const ComplexField& u) {
  const DiskGrid& g = u.grid();
  const int n = g.n;
  const double kfac = kPi / g.half_width;  // physical frequency per index
  std::vector<Complex> work = u.values();
  fft2(work, n, false);
  for (int j = 0; j < n; ++j) {
    const int fj = j < n / 2 ? j : j - n;
    for (int i = 0; i < n; ++i) {
      const int fi = i < n / 2 ? i : i - n;
      const std::size_t idx = static_cast<std::size_t>(j) * n + i;
      // d/dz = (d/dx - i d/dy)/2  ->  (i/2) conj(kappa); 0 at the zero mode.
      const Complex kappa(kfac * fi, kfac * fj);
      work[idx] *= Complex(0.0, 0.5) * std::conj(kappa);
    }
  }
  fft2(work, n, true);
  ComplexField out(g);
  out.values() = std::move(work);
  out.set_trusted_margin(u.trusted_margin());
  return out;
}

ComplexField beurling(const ComplexField& phi) {
  if (!is_disk_supported(phi))
    throw DomainError("beurling: phi must vanish outside the unit disk (mask it)");
  // d/dz of the Cauchy-Green antiderivative, with the derivative taken as a
  // Fourier multiplier on the padded torus (zero frequency stays 0, the mean
  // convention).  The convolution step keeps the composition alias-free on
  // the disk, unlike a bare conj(kappa)/kappa multiplier whose periodic
  // images are visible at the 1e-2 level.
  return spectral_dz(cauchy_green(TransformKind::DzbarInv, phi));
}

}  // namespace beltrami
