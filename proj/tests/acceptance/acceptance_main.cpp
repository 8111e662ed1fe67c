// Acceptance suite: runs every gate of the experiment battery at its pinned
// size and tolerance and prints one PASS/FAIL line per criterion.  Exits
// nonzero if any criterion fails.  argv[1] must point at the CLI binary
// (used by the determinism criterion).

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "beltrami/coefficient.hpp"
#include "beltrami/geometry.hpp"
#include "beltrami/probes.hpp"
#include "beltrami/seminorms.hpp"
#include "beltrami/solver.hpp"
#include "beltrami/transforms.hpp"

using namespace beltrami;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};
std::vector<Outcome> outcomes;

void record(int id, const std::string& name, bool pass, const std::string& detail) {
  outcomes.push_back({id, name, pass, detail});
  std::printf("[%s] criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Complex bump(Complex z, double R) {
  const double s = std::norm(z) / (R * R);
  if (s >= 1.0) return 0.0;
  return std::exp(-s / (1.0 - s));
}

double right_inverse_residual(int n) {
  DiskGrid g(n);
  ComplexField phi = sample([](Complex z) { return bump(z, 0.5); }, g);
  ComplexField t = cauchy_green(TransformKind::DzInv, phi);
  ComplexField dt = differentiate(t, Dir::Z);
  return sup_abs_diff(dt, phi, 0.9) / sup_abs(phi, 10.0);
}

void criterion_1() {
  const auto t0 = Clock::now();
  const double e512 = right_inverse_residual(512);
  const double e1024 = right_inverse_residual(1024);
  const double order = std::log2(e512 / e1024);
  const double secs = elapsed(t0);
  const bool pass = e1024 <= 1e-3 && order >= 2.0 && secs <= 10.0;
  record(1, "transform right-inverse", pass,
         fmt("residual=%.3e (<=1e-3), order=%.2f (>=2), runtime=%.1fs (<=10)", e1024, order,
             secs));
}

void criterion_2() {
  DiskGrid g(1024);
  ComplexField ind = sample(
      [](Complex z) { return std::abs(z) <= 1.0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0); },
      g);
  ComplexField t1 = cauchy_green(TransformKind::DzbarInv, ind);
  ComplexField e1 = sample([](Complex z) { return std::conj(z); }, g);
  const double m1 = sup_abs_diff(t1, e1, 0.9);
  ComplexField t2 = cauchy_green(TransformKind::DzInv, ind);
  ComplexField e2 = sample([](Complex z) { return z; }, g);
  const double m2 = sup_abs_diff(t2, e2, 0.9);
  const bool pass = m1 <= 2e-3 && m2 <= 2e-3;
  record(2, "classical identity on the disk", pass,
         fmt("|DzbarInv(1)-zbar|=%.3e, |DzInv(1)-z|=%.3e (<=2e-3)", m1, m2));
}

void criterion_3() {
  DiskGrid g(256);
  Chart chart = solve_beltrami(ComplexField(g), 1e-10, 50);
  ComplexField ident = sample([](Complex z) { return z; }, g);
  const double werr = sup_abs_diff(chart.w, ident, 0.9);
  const double ferr = sup_abs(chart.f, 0.9);
  const bool pass = chart.iterations == 1 && werr <= 1e-10 && ferr <= 1e-10;
  record(3, "identity chart", pass,
         fmt("iterations=%d (=1), |w-z|=%.2e, |f|=%.2e (<=1e-10)", chart.iterations, werr,
             ferr));
}

// The n = 2048 chart and decomposition feed criteria 4 and 6-8.
struct BigChart {
  DiskGrid grid;
  CounterexampleCoefficient coeff;
  Chart chart;
  Decomposition dec;
  double anti_residual(double r_min_cells) const {
    ComplexField dz_anti = differentiate(dec.antiholo, Dir::Z);
    const double r_min = r_min_cells * grid.spacing();
    double worst = 0.0;
    for (int iy = dz_anti.trusted_margin(); iy < grid.n - dz_anti.trusted_margin(); ++iy)
      for (int ix = dz_anti.trusted_margin(); ix < grid.n - dz_anti.trusted_margin(); ++ix) {
        const double r = std::abs(grid.node(ix, iy));
        if (r >= r_min && r <= 0.9) worst = std::max(worst, std::abs(dz_anti.at(ix, iy)));
      }
    return worst;
  }
};

std::unique_ptr<BigChart> solve_big() {
  DiskGrid grid(2048);
  CounterexampleCoefficient coeff(1);
  ComplexField mu = sample([&](Complex z) { return -std::conj(coeff.a(z)); }, grid);
  Chart chart = solve_beltrami(mu, 1e-10, 50);
  Decomposition dec = decompose(chart, decomposition_input(coeff), 3e-2);
  return std::unique_ptr<BigChart>(
      new BigChart{grid, std::move(coeff), std::move(chart), std::move(dec)});
}

void criterion_4(const BigChart& big) {
  double worst_ratio = 0.0;
  for (std::size_t i = 1; i + 1 < big.chart.increments.size(); ++i)
    worst_ratio = std::max(worst_ratio,
                           big.chart.increments[i] / big.chart.increments[i - 1]);
  const bool pass = worst_ratio <= 0.01 && big.chart.iterations <= 8 &&
                    big.chart.residual <= 5e-3;
  record(4, "contraction and chart residual at n=2048", pass,
         fmt("ratio=%.4g (<=0.01), iterations=%d (<=8), residual=%.3e (<=5e-3)",
             worst_ratio, big.chart.iterations, big.chart.residual));
}

void criterion_5() {
  for (int k : {1, 2}) {
    const auto t0 = Clock::now();
    CounterexampleCoefficient coeff(k);
    ProbeSet probes(5, 14, 16, 256, 20260810);
    QuadratureSpec quad;
    quad.rel_tol = 1e-5;
    LemmaBlowupResult res = lemma_blowup_experiment(coeff, probes, quad, 2);
    const double secs = elapsed(t0);
    const double target = res.slope_target;
    const double rel = std::abs(res.transform_fit.slope - target) / target;
    const double agree = std::abs(res.transform_fit.slope - res.surrogate_fit.slope) /
                         std::abs(res.surrogate_fit.slope);
    const bool pass = rel <= 0.15 && agree <= 0.05 && secs <= 600.0;
    record(5, fmt("root-log blow-up slope, k=%d", k), pass,
           fmt("slope=%.5f vs %.3f (|rel|=%.1f%% <=15%%), surrogate gap=%.2f%% (<=5%%), "
               "runtime=%.0fs (<=600)",
               res.transform_fit.slope, target, 100 * rel, 100 * agree, secs));
  }
}

void criterion_6(const BigChart& big) {
  GridProbe f_probe(big.chart.f, 0);
  ProbeSet probes(3, 8, 16, 256, 20260810);
  SeminormTable lip = lipschitz_quotient(f_probe, 0, probes);
  int run = 1, best = 1;
  for (std::size_t i = 1; i < lip.rows.size(); ++i) {
    run = lip.rows[i].value >= lip.rows[i - 1].value * 0.98 ? run + 1 : 1;
    best = std::max(best, run);
  }
  LogFit fit = fit_sqrt_log(lip);
  const bool pass = best >= 6 && fit.slope > 0.0 && fit.r2 >= 0.9;
  record(6, "chart non-Lipschitz evidence (k=1)", pass,
         fmt("nondecreasing run=%d (>=6), c=%.4f (>0, reported), R2=%.3f (>=0.9)", best,
             fit.slope, fit.r2));
}

void criterion_7(const BigChart& big) {
  ProbeSet probes(3, 8, 16, 256, 20260810);
  GridProbe h_probe(big.dec.h, 1);
  SeminormTable hh = holder_seminorm(h_probe, 1, 0.75, probes);
  double hmax = 0.0;
  for (const SeminormRow& r : hh.rows) hmax = std::max(hmax, r.value);
  const double hbound = 3.0 * hh.rows.front().value;

  ComplexField abar_gz = multiply(
      sample([&](Complex z) { return std::conj(big.coeff.a(z)); }, big.grid),
      differentiate(big.dec.g, Dir::Z));
  GridProbe ag_probe(abar_gz, 0);
  SeminormTable ag = holder_seminorm(ag_probe, 0, 0.75, probes);
  double agmax = 0.0;
  for (const SeminormRow& r : ag.rows) agmax = std::max(agmax, r.value);
  const double agbound = 3.0 * ag.rows.front().value;

  const bool pass = hmax <= hbound && agmax <= agbound;
  record(7, "Holder-(1-eps) boundedness of grad h and abar g_z", pass,
         fmt("grad h: max=%.4g vs 3x coarsest=%.4g; abar g_z: max=%.4g vs %.4g", hmax,
             hbound, agmax, agbound));
}

void criterion_8(const BigChart& big) {
  const double g_scale = sup_abs(big.dec.g, 0.9);
  const double anti2048 = big.anti_residual(8.0);

  // Refinement comparison at n = 1024.
  CounterexampleCoefficient coeff(1);
  DiskGrid g1024(1024);
  ComplexField mu = sample([&](Complex z) { return -std::conj(coeff.a(z)); }, g1024);
  Chart chart1024 = solve_beltrami(mu, 1e-10, 50);
  Decomposition dec1024 = decompose(chart1024, decomposition_input(coeff), 3e-2);
  ComplexField dz_anti = differentiate(dec1024.antiholo, Dir::Z);
  double anti1024 = 0.0;
  const double r_min = 8.0 * g1024.spacing();
  for (int iy = dz_anti.trusted_margin(); iy < g1024.n - dz_anti.trusted_margin(); ++iy)
    for (int ix = dz_anti.trusted_margin(); ix < g1024.n - dz_anti.trusted_margin(); ++ix) {
      const double r = std::abs(g1024.node(ix, iy));
      if (r >= r_min && r <= 0.9) anti1024 = std::max(anti1024, std::abs(dz_anti.at(ix, iy)));
    }

  const bool pass = anti2048 <= 1e-2 * g_scale && anti2048 < anti1024 &&
                    big.dec.sum_residual <= 1e-2 * g_scale;
  record(8, "anti-holomorphy and four-term sum", pass,
         fmt("dz-residual=%.3e (<=%.3e), refines %.3e -> %.3e, sum=%.3e (<=%.3e)", anti2048,
             1e-2 * g_scale, anti1024, anti2048, big.dec.sum_residual, 1e-2 * g_scale));
}

void criterion_9() {
  SplitMix64 rng(20260810);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const Complex a = std::polar(0.97 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * kPi));
    Mat2 J = j_from_a(a);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        for (int m = 0; m < 2; ++m) acc += J[i][m] * J[m][j];
        worst = std::max(worst, std::abs(acc + (i == j ? 1.0 : 0.0)));
      }
  }
  CounterexampleCoefficient coeff(1);
  LiftedStructureND lifted = lift(coeff, 2);
  SplitMix64 prng(4242);
  std::vector<LiftedStructureND::PointND> pts;
  while (pts.size() < 100) {
    LiftedStructureND::PointND p(2);
    for (int c = 0; c < 2; ++c) p[c] = Complex(prng.uniform(-0.4, 0.4), prng.uniform(-0.4, 0.4));
    if (std::abs(p[0]) < 0.03) continue;
    pts.push_back(p);
  }
  const double d1 = involutivity_check(lifted, pts, 1e-3);
  const double d2 = involutivity_check(lifted, pts, 5e-4);
  const double shrink = d1 / std::max(d2, 1e-300);
  const bool pass = worst <= 1e-12 && d1 <= 1e-6 && shrink >= 3.0;
  record(9, "geometry: J^2 = -I and lifted involutivity", pass,
         fmt("J^2 defect=%.2e (<=1e-12), bracket defect=%.2e (<=1e-6), shrink=%.1fx (>=3)",
             worst, d1, shrink));
}

void criterion_10() {
  bool pass = true;
  std::string detail;
  for (int k : {1, 2, 3}) {
    CounterexampleCoefficient coeff(k);
    DiskGrid grid(512);
    ProbeSet probes(4, 10, 16, 64, 7);
    PropertyReport rep = verify_properties(coeff, grid, probes);
    double sup_a = rep.checks.back().measured;
    const bool ok = rep.all_pass() && sup_a < 0.004;
    pass = pass && ok;
    detail += fmt("k=%d:%s sup|a|=%.4g ", k, rep.all_pass() ? "all-pass" : "FAIL", sup_a);
  }
  record(10, "coefficient property audit, k in {1,2,3}", pass, detail + "(<0.004)");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_11(const std::string& cli_path) {
  const fs::path base = fs::temp_directory_path() / "beltrami_acceptance_det";
  fs::remove_all(base);
  fs::create_directories(base);
  const fs::path out = base / "run";
  const std::string cmd = cli_path + " all --profile smoke --seed 77 --format csv,json" +
                          " --out-dir " + out.string() + " > /dev/null 2>&1";
  double max_secs = 0.0;
  const fs::path snap = base / "snap";
  for (int pass_idx = 0; pass_idx < 2; ++pass_idx) {
    const auto t0 = Clock::now();
    const int rc = std::system(cmd.c_str());
    max_secs = std::max(max_secs, elapsed(t0));
    if (WEXITSTATUS(rc) != 0) {
      record(11, "determinism of the smoke profile", false,
             fmt("CLI exited %d on run %d", WEXITSTATUS(rc), pass_idx + 1));
      return;
    }
    if (pass_idx == 0) {
      fs::create_directories(snap);
      for (const auto& e : fs::directory_iterator(out))
        fs::copy(e.path(), snap / e.path().filename());
    }
  }
  bool identical = true;
  std::string offender;
  for (const auto& entry : fs::directory_iterator(out)) {
    const fs::path rel = entry.path().filename();
    if (rel == "report.json") continue;
    if (slurp(entry.path()) != slurp(snap / rel)) {
      identical = false;
      offender = rel.string();
    }
  }
  nlohmann::ordered_json ra = nlohmann::ordered_json::parse(slurp(out / "report.json"));
  nlohmann::ordered_json rb = nlohmann::ordered_json::parse(slurp(snap / "report.json"));
  ra.erase("timing");
  rb.erase("timing");
  const bool reports_equal = ra.dump() == rb.dump();
  const bool pass = identical && reports_equal && max_secs <= 60.0;
  record(11, "determinism of the smoke profile", pass,
         fmt("artifacts %s%s, reports-minus-timing %s, runtime=%.0fs (<=60)",
             identical ? "byte-identical" : "DIFFER: ", offender.c_str(),
             reports_equal ? "identical" : "DIFFER", max_secs));
}

}  // namespace

int main(int argc, char** argv) {
  std::printf("acceptance suite (library version %s)\n", "0.1.0");
  criterion_1();
  criterion_2();
  criterion_3();
  {
    std::unique_ptr<BigChart> big = solve_big();
    criterion_4(*big);
    criterion_6(*big);
    criterion_7(*big);
    criterion_8(*big);
  }
  criterion_5();
  criterion_9();
  criterion_10();
  if (argc > 1) {
    criterion_11(argv[1]);
  } else {
    record(11, "determinism of the smoke profile", false, "CLI path not supplied");
  }

  int failed = 0;
  for (const Outcome& o : outcomes)
    if (!o.pass) ++failed;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(outcomes.size()) - failed,
              outcomes.size());
  return failed == 0 ? 0 : 1;
}
