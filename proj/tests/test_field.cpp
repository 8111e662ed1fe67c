#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <fstream>

#include "beltrami/coefficient.hpp"
#include "beltrami/field.hpp"

using namespace beltrami;
using doctest::Approx;

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(DiskGrid(255), DomainError);
  CHECK_THROWS_AS(DiskGrid(254), DomainError);
  CHECK_THROWS_AS(DiskGrid(256, 1.0), DomainError);
  DiskGrid g(256);
  CHECK(g.spacing() == Approx(4.0 / 256));
  // Origin is a node.
  CHECK(std::abs(g.node(128, 128)) == 0.0);
}

TEST_CASE("sample: zero, identity, and the singular-limit coefficient") {
  DiskGrid g(256);
  ComplexField zero = sample([](Complex) { return Complex(0.0, 0.0); }, g);
  CHECK(sup_abs(zero, 10.0) == 0.0);

  ComplexField ident = sample([](Complex z) { return z; }, g);
  CHECK(std::abs(ident.at(10, 20) - g.node(10, 20)) == 0.0);

  CounterexampleCoefficient coeff(1);
  ComplexField af = sample([&](Complex z) { return coeff.a(z); }, g);
  CHECK(sup_abs(af, 10.0) < 0.1);

  CHECK_THROWS_AS(sample([](Complex z) { return Complex(1.0, 0.0) / std::abs(z); }, g),
                  DomainError);
}

TEST_CASE("differentiate: exact on low-degree polynomials") {
  DiskGrid g(256);
  ComplexField ident = sample([](Complex z) { return z; }, g);
  ComplexField dz = differentiate(ident, Dir::Z);
  ComplexField dzb = differentiate(ident, Dir::Zbar);
  double worst_z = 0.0, worst_zb = 0.0;
  const int m = dz.trusted_margin();
  for (int iy = m; iy < g.n - m; ++iy) {
    for (int ix = m; ix < g.n - m; ++ix) {
      worst_z = std::max(worst_z, std::abs(dz.at(ix, iy) - 1.0));
      worst_zb = std::max(worst_zb, std::abs(dzb.at(ix, iy)));
    }
  }
  CHECK(worst_z < 1e-10);
  CHECK(worst_zb < 1e-10);

  ComplexField sq = sample([](Complex z) { return z * z; }, g);
  ComplexField dsq = differentiate(sq, Dir::Z);
  CHECK(std::abs(evaluate_at(dsq, Complex(0.3, 0.1)) - Complex(0.6, 0.2)) < 1e-8);

  CHECK_THROWS_AS(differentiate(ident, Dir::Z, 5), DomainError);
}

TEST_CASE("differentiate: linearity and conjugation") {
  DiskGrid g(256);
  ComplexField u = sample([](Complex z) { return std::exp(z * Complex(0.4, 0.3)); }, g);
  ComplexField v = sample([](Complex z) { return z * z + std::conj(z); }, g);
  const Complex alpha(1.3, -0.7), beta(0.2, 2.0);
  ComplexField lhs = differentiate(add(scale(u, alpha), scale(v, beta)), Dir::Z);
  ComplexField rhs =
      add(scale(differentiate(u, Dir::Z), alpha), scale(differentiate(v, Dir::Z), beta));
  CHECK(sup_abs_diff(lhs, rhs, 10.0) < 1e-12);

  // d/dz conj(u) == conj(d/dzbar u) nodewise.
  ComplexField cc = differentiate(conjugate(u), Dir::Z);
  ComplexField cz = conjugate(differentiate(u, Dir::Zbar));
  CHECK(sup_abs_diff(cc, cz, 10.0) == 0.0);
}

TEST_CASE("differentiate: observed order >= 4 on refinement") {
  auto fn = [](Complex z) { return std::exp(Complex(0.0, 1.0) * z.real()) * std::cos(z.imag()); };
  auto dfn = [](Complex z) -> Complex {
    // d/dz = (d/dx - i d/dy)/2
    const Complex ex = std::exp(Complex(0.0, 1.0) * z.real());
    return 0.5 * (Complex(0.0, 1.0) * ex * std::cos(z.imag()) -
                  Complex(0.0, 1.0) * (-ex * std::sin(z.imag())));
  };
  double errors[2];
  int idx = 0;
  for (int n : {256, 512}) {
    DiskGrid g(n);
    ComplexField u = sample(fn, g);
    ComplexField d = differentiate(u, Dir::Z);
    ComplexField d_exact = sample(dfn, g);
    errors[idx++] = sup_abs_diff(d, d_exact, 1.5);
  }
  CHECK(errors[0] / errors[1] >= 12.0);
}

TEST_CASE("evaluate_at: nodes exact, midpoints high order") {
  DiskGrid g(256);
  ComplexField c = sample([](Complex) { return Complex(2.5, -1.0); }, g);
  const Complex node = g.node(40, 50);
  CHECK(std::abs(evaluate_at(c, node) - Complex(2.5, -1.0)) == 0.0);
  const double h = g.spacing();
  CHECK(std::abs(evaluate_at(c, node + Complex(h / 2, h / 2)) - Complex(2.5, -1.0)) < 1e-13);

  ComplexField sq = sample([](Complex z) { return z * z; }, g);
  ComplexField ident = sample([](Complex z) { return z; }, g);
  CHECK(std::abs(evaluate_at(sq, node) - node * node) == 0.0);
  const Complex mid = node + Complex(h / 2, h / 2);
  CHECK(std::abs(evaluate_at(sq, mid) - mid * mid) < 1e-12);  // cubic-exact
  CHECK(std::abs(evaluate_at(ident, mid) - mid) < 1e-13);

  // Quartic data picks up the O(h^4) truncation.
  ComplexField quart = sample([](Complex z) { return std::pow(z.real(), 4); }, g);
  CHECK(std::abs(evaluate_at(quart, mid) - std::pow(mid.real(), 4)) < 20 * h * h * h * h);

  CHECK_THROWS_AS(evaluate_at(sq, Complex(5.0, 0.0)), DomainError);
}

TEST_CASE("field serialization round-trips the debug layouts") {
  DiskGrid g(256);
  ComplexField u = sample([](Complex z) { return z * z; }, g);
  const std::string csv = "/tmp/beltrami_field_test.csv";
  const std::string bin = "/tmp/beltrami_field_test.bin";
  write_field_csv(u, csv);
  write_field_binary(u, bin);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.find("n=256") != std::string::npos);
  std::getline(in, line);
  CHECK(line.find(',') != std::string::npos);
  std::ifstream binary(bin, std::ios::binary);
  std::int32_t n = 0;
  binary.read(reinterpret_cast<char*>(&n), sizeof(n));
  CHECK(n == 256);
}

TEST_CASE("wirtinger_fd reproduces exact derivatives") {
  auto fn = [](Complex z) { return z * z * std::conj(z); };
  // d/dz: 2 z conj(z); d/dzbar: z^2; d2/dz dzbar: 2z.
  const Complex z0(0.3, -0.2);
  CHECK(std::abs(wirtinger_fd(fn, z0, 1, 0, 1e-3) - 2.0 * z0 * std::conj(z0)) < 1e-11);
  CHECK(std::abs(wirtinger_fd(fn, z0, 0, 1, 1e-3) - z0 * z0) < 1e-11);
  CHECK(std::abs(wirtinger_fd(fn, z0, 1, 1, 1e-3) - 2.0 * z0) < 1e-9);
}
