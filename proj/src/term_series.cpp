#include "beltrami/term_series.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace beltrami {

namespace {

// Integer power by repeated multiplication; exponents here are small.
std::complex<long double> ipow(std::complex<long double> z, int p) {
  if (p == 0) return {1.0L, 0.0L};
  std::complex<long double> base = p > 0 ? z : 1.0L / z;
  int n = p > 0 ? p : -p;
  std::complex<long double> out{1.0L, 0.0L};
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

}  // namespace

LogPowerSeries LogPowerSeries::conj_power_root_log(int m) {
  return LogPowerSeries({Term{1.0L, 0, m, 1}});
}

LogPowerSeries LogPowerSeries::dz() const {
  // d/dz [z^p zb^q L^s] = p z^(p-1) zb^q L^s - (s/2) z^(p-1) zb^q L^(s-1),
  // using d/dz (-log|z|) = -1/(2z).
  std::vector<Term> out;
  out.reserve(2 * terms_.size());
  for (const Term& t : terms_) {
    if (t.p != 0) out.push_back({t.coeff * t.p, t.p - 1, t.q, t.s2});
    if (t.s2 != 0) out.push_back({-t.coeff * t.s2 / 4.0L, t.p - 1, t.q, t.s2 - 2});
  }
  return LogPowerSeries(std::move(out));
}

LogPowerSeries LogPowerSeries::dzbar() const {
  std::vector<Term> out;
  out.reserve(2 * terms_.size());
  for (const Term& t : terms_) {
    if (t.q != 0) out.push_back({t.coeff * t.q, t.p, t.q - 1, t.s2});
    if (t.s2 != 0) out.push_back({-t.coeff * t.s2 / 4.0L, t.p, t.q - 1, t.s2 - 2});
  }
  return LogPowerSeries(std::move(out));
}

LogPowerSeries LogPowerSeries::derivative(int p, int q) const {
  if (p < 0 || q < 0) throw DomainError("derivative orders must be nonnegative");
  LogPowerSeries s = *this;
  for (int i = 0; i < p; ++i) s = s.dz();
  for (int i = 0; i < q; ++i) s = s.dzbar();
  // Combine like terms; repeated differentiation otherwise doubles the list.
  std::map<std::tuple<int, int, int>, long double> acc;
  for (const Term& t : s.terms_) acc[{t.p, t.q, t.s2}] += t.coeff;
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [key, c] : acc) {
    if (c != 0.0L) out.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  }
  return LogPowerSeries(std::move(out));
}

LogPowerSeries LogPowerSeries::scaled(double factor) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coeff *= static_cast<long double>(factor);
  return LogPowerSeries(std::move(out));
}

Complex LogPowerSeries::eval(Complex z) const {
  const std::complex<long double> zl(z.real(), z.imag());
  const long double r = std::abs(zl);
  if (r >= 1.0L) throw DomainError("LogPowerSeries::eval: |z| must be < 1");
  if (r == 0.0L) {
    // Limits as z -> 0: |T| = |z|^(p+q) * L^(s2/2) vanishes when p+q >= 1,
    // and also when p+q == 0 with a negative log power.
    double constant = 0.0;
    for (const Term& t : terms_) {
      if (t.p + t.q >= 1) continue;
      if (t.p + t.q == 0 && t.s2 < 0) continue;
      if (t.p + t.q == 0 && t.s2 == 0) {
        constant += static_cast<double>(t.coeff);
        continue;
      }
      throw DomainError("LogPowerSeries::eval: no limit at z = 0");
    }
    return {constant, 0.0};
  }
  const long double L = -std::log(r);
  const std::complex<long double> zb = std::conj(zl);
  std::complex<long double> sum{0.0L, 0.0L};
  for (const Term& t : terms_) {
    sum += t.coeff * ipow(zl, t.p) * ipow(zb, t.q) * std::pow(L, t.s2 / 2.0L);
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

}  // namespace beltrami
