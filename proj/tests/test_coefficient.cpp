#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "beltrami/coefficient.hpp"

using namespace beltrami;
using doctest::Approx;

namespace {
double lambda(double r) { return -std::log(r); }
}

TEST_CASE("b closed form: frozen oracle values") {
  CounterexampleCoefficient coeff(1);
  // b(z) = zbar^2 sqrt(-log|z|) at z = 1/4; high-precision oracle value.
  const Complex v = coeff.b(Complex(0.25, 0.0));
  CHECK(v.real() == Approx(0.073588126407217168).epsilon(1e-14));
  CHECK(v.imag() == Approx(0.0));
  CHECK(std::abs(coeff.b(Complex(0.0, 0.0))) == 0.0);
  CHECK_THROWS_AS(coeff.b(Complex(1.0, 0.5)), DomainError);
}

TEST_CASE("b second zbar-derivative matches the root-log profile") {
  CounterexampleCoefficient coeff(1);
  const double r = std::ldexp(1.0, -10);
  const Complex d = coeff.b_deriv(Complex(r, 0.0), 0, 2);
  // Exact value via the term algebra, frozen from a 50-digit evaluation.
  CHECK(d.real() == Approx(4.9772416513021972).epsilon(1e-13));
  CHECK(d.imag() == Approx(0.0));
  // Leading term (k+1)! sqrt(-log r) = 2 sqrt(10 ln 2); the remainder is
  // O((-log r)^{-1/2}).
  const double leading = 2.0 * std::sqrt(lambda(r));
  CHECK(leading == Approx(5.2655376954683187).epsilon(1e-14));
  CHECK(std::abs(d.real() - leading) <= 1.0 / std::sqrt(lambda(r)));
  // Purely radial: the same value at any angle.
  const Complex rotated = coeff.b_deriv(std::polar(r, 1.234), 0, 2);
  CHECK(std::abs(rotated - d) <= 1e-12 * std::abs(d));
}

TEST_CASE("a closed form: frozen value and vanishing limit") {
  CounterexampleCoefficient coeff(1);
  CHECK(std::abs(coeff.a(Complex(0.0, 0.0))) == 0.0);
  const Complex v = coeff.a(Complex(0.25, 0.0));
  CHECK(v.real() == Approx(-5.3082612518001190e-4).epsilon(1e-13));
  CHECK(v.imag() == Approx(0.0));
}

TEST_CASE("a agrees with the derivative of b (finite-difference oracle)") {
  CounterexampleCoefficient coeff(1);
  // a = (1/100) d/dz b on the plateau; centered differences of b at step 1e-6.
  for (Complex z0 : {Complex(0.25, 0.0), Complex(0.1, 0.2), Complex(-0.3, 0.12)}) {
    const Complex fd =
        0.01 * wirtinger_fd([&](Complex z) { return coeff.b(z); }, z0, 1, 0, 1e-6);
    const Complex a = coeff.a(z0);
    CHECK(std::abs(fd - a) <= 1e-8 * std::abs(a));
  }
}

TEST_CASE("two forms of the defining formula coincide on the plateau") {
  // (1/100) zbar^{k+1} dz (-log|z|)^{1/2}  ==  (1/100) dz (zbar^{k+1} (-log|z|)^{1/2})
  for (int k : {1, 2, 3}) {
    CounterexampleCoefficient coeff(k);
    for (Complex z0 : {Complex(0.3, 0.1), Complex(-0.05, 0.21), Complex(0.4, -0.2)}) {
      const double L = lambda(std::abs(z0));
      // first form: zbar^{k+1} * (-1/(4 z L^{1/2})) / 100
      const Complex zb = std::conj(z0);
      Complex pw = 1.0;
      for (int i = 0; i < k + 1; ++i) pw *= zb;
      const Complex form1 = -pw / (400.0 * z0 * std::sqrt(L));
      const Complex form2 = coeff.a(z0);
      CHECK(std::abs(form1 - form2) <= 1e-15 + 1e-13 * std::abs(form2));
    }
  }
}

TEST_CASE("a_zbar agrees with finite differences of a") {
  CounterexampleCoefficient coeff(1);
  for (double r : {1e-3, 0.01, 0.1, 0.3, 0.45}) {
    const Complex z0 = std::polar(r, 0.7);
    const Complex fd =
        wirtinger_fd([&](Complex z) { return coeff.a(z); }, z0, 0, 1, r / 128.0);
    const Complex ex = coeff.a_zbar(z0);
    CHECK(std::abs(fd - ex) <= 1e-6 * std::max(1e-12, std::abs(ex)));
  }
  // Taper region: product-rule derivatives against differences.
  for (double r : {0.55, 0.65, 0.72}) {
    const Complex z0 = std::polar(r, 2.1);
    const Complex fd =
        wirtinger_fd([&](Complex z) { return coeff.a(z); }, z0, 0, 1, 1e-4);
    const Complex ex = coeff.a_zbar(z0);
    CHECK(std::abs(fd - ex) <= 1e-8);
  }
}

TEST_CASE("normalized decay rate is exactly 1/400 on the plateau") {
  // |a(z)| * sqrt(-log|z|) / |z|^k == 1/400 for 0 < r <= 1/2.
  for (int k : {1, 2}) {
    CounterexampleCoefficient coeff(k);
    for (double r : {1e-4, 0.01, 0.2, 0.5}) {
      const Complex z0 = std::polar(r, 0.3);
      const double ratio = std::abs(coeff.a(z0)) * std::sqrt(lambda(r)) / std::pow(r, k);
      CHECK(ratio == Approx(1.0 / 400.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("sup |a| stays far below delta0") {
  CounterexampleCoefficient coeff(1);
  double sup = 0.0;
  for (int ir = 1; ir <= 300; ++ir) {
    const double r = ir / 300.0;
    for (int i = 0; i < 16; ++i)
      sup = std::max(sup, std::abs(coeff.a(std::polar(r, 2.0 * kPi * i / 16.0))));
  }
  CHECK(sup < 0.004);
  CHECK(sup < CounterexampleCoefficient::delta0);
}

TEST_CASE("cutoff geometry: plateau, support, smooth transition") {
  CounterexampleCoefficient coeff(2);
  CHECK(coeff.chi(0.0) == 1.0);
  CHECK(coeff.chi(0.125) == 1.0);
  CHECK(coeff.chi(0.375) == 0.0);
  CHECK(coeff.chi(0.5) == 0.0);
  CHECK(coeff.chi(0.25) > 0.0);
  CHECK(coeff.chi(0.25) < 1.0);
  CHECK(std::abs(coeff.chi_z(Complex(0.05, 0.0))) == 0.0);
  CHECK(std::abs(coeff.chi_z(Complex(0.4, 0.0))) == 0.0);
  const Complex fd = wirtinger_fd(
      [&](Complex z) { return Complex(coeff.chi(std::abs(z)), 0.0); },
      Complex(0.2, 0.1), 1, 0, 1e-4);
  CHECK(std::abs(fd - coeff.chi_z(Complex(0.2, 0.1))) <= 1e-8);
}

TEST_CASE("supported k range is 1..3") {
  CHECK_THROWS_AS(CounterexampleCoefficient(0), DomainError);
  CHECK_THROWS_AS(CounterexampleCoefficient(4), DomainError);
}

TEST_CASE("property audit passes for the counterexample coefficient") {
  for (int k : {1, 2, 3}) {
    CounterexampleCoefficient coeff(k);
    DiskGrid grid(256);
    ProbeSet probes(4, 10, 16, 64, 7);
    PropertyReport report = verify_properties(coeff, grid, probes);
    for (const PropertyCheck& c : report.checks) {
      INFO("k=", k, " check=", c.name, " measured=", c.measured, " bound=", c.bound);
      CHECK(c.pass);
    }
    CHECK(report.all_pass());
  }
}

TEST_CASE("property audit rejects a non-decaying coefficient") {
  // a replaced by 0.05 * taper(r): a/z ~ 1/z diverges, so the decay audit
  // for a/z must fail while the one for z*a still passes.
  CounterexampleCoefficient real_coeff(1);
  auto fake = [&](Complex z) -> Complex {
    return Complex(0.05 * real_coeff.taper(std::abs(z)), 0.0);
  };
  ProbeSet probes(4, 10, 16, 64, 7);
  CHECK(audit_decay_za(fake, 1, probes).pass);
  CHECK_FALSE(audit_decay_a_over_z(fake, 1, probes).pass);
  // a == 0 passes vacuously.
  auto zero = [](Complex) -> Complex { return 0.0; };
  CHECK(audit_decay_za(zero, 1, probes).pass);
  CHECK(audit_decay_a_over_z(zero, 1, probes).pass);
}
