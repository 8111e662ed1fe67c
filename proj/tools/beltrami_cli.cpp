#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "beltrami/pipelines.hpp"

using namespace beltrami;

int main(int argc, char** argv) {
  CLI::App app{"Planar Cauchy-Green / Beurling transforms, Beltrami charts, and the "
               "root-log regularity experiments"};
  app.require_subcommand(1);

  std::string config_path;
  int k = 0, grid_n = 0, max_iter = 0, j_min = -1, j_max = -1, angles = 0, pairs = 0,
      jobs = 0;
  double pad = 0.0, tol = 0.0, fit_tol = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir, profile;
  std::vector<std::string> formats;

  auto* opt_config = app.add_option("--config", config_path, "JSON config file");
  auto* opt_k = app.add_option("--k", k, "regularity parameter k (1..3)");
  auto* opt_n = app.add_option("--grid-n", grid_n, "grid samples per axis (even, >= 256)");
  auto* opt_pad = app.add_option("--pad", pad, "grid half-width L (>= 2)");
  auto* opt_tol = app.add_option("--tol", tol, "solver fixed-point tolerance");
  auto* opt_iter = app.add_option("--max-iter", max_iter, "solver iteration cap");
  auto* opt_jmin = app.add_option("--j-min", j_min, "coarsest dyadic probe exponent");
  auto* opt_jmax = app.add_option("--j-max", j_max, "finest dyadic probe exponent");
  auto* opt_ang = app.add_option("--angles", angles, "probe angles per radius (>= 16)");
  auto* opt_pairs = app.add_option("--pairs", pairs, "probe pair budget per scale");
  auto* opt_seed = app.add_option("--seed", seed, "RNG seed for probe sampling");
  auto* opt_fit = app.add_option("--fit-tol", fit_tol, "relative slope tolerance");
  auto* opt_out = app.add_option("--out-dir", out_dir, "artifact directory");
  auto* opt_fmt = app.add_option("--format", formats, "output formats (csv,json,svg)")
                      ->delimiter(',');
  auto* opt_prof = app.add_option("--profile", profile, "preset: smoke or full");
  auto* opt_jobs = app.add_option("--jobs", jobs, "probe-evaluation parallelism");

  const char* commands[] = {"coeff-check",      "transform-selftest", "solve-chart",
                            "lemma-blowup",     "chart-regularity",   "nijenhuis-check",
                            "all"};
  const char* descriptions[] = {
      "audit the coefficient properties",
      "transform identities and inverse checks",
      "solve the chart equation for the counterexample coefficient",
      "root-log blow-up of the transformed derivative",
      "seminorm tables of the solved chart",
      "almost complex structure and involutivity checks",
      "run every stage in order"};
  for (int i = 0; i < 7; ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig config;
    if (*opt_config) config = ExperimentConfig::from_file(config_path);
    if (const char* env = std::getenv("BELTRAMI_OUT_DIR");
        env && !*opt_out && config.out_dir == "out")
      config.out_dir = env;
    if (*opt_prof) config.apply_profile(profile);
    if (*opt_k) config.k = k;
    if (*opt_n) config.grid_n = grid_n;
    if (*opt_pad) config.pad_half_width = pad;
    if (*opt_tol) config.tol = tol;
    if (*opt_iter) config.max_iter = max_iter;
    if (*opt_jmin) config.j_min = j_min;
    if (*opt_jmax) config.j_max = j_max;
    if (*opt_ang) config.angles = angles;
    if (*opt_pairs) config.pairs = pairs;
    if (*opt_seed) config.seed = seed;
    if (*opt_fit) config.fit_tol = fit_tol;
    if (*opt_out) config.out_dir = out_dir;
    if (*opt_fmt) config.formats = formats;
    if (*opt_jobs) config.jobs = jobs;
    config.validate();

    const std::string command = app.get_subcommands().front()->get_name();
    RunReport report = run_command(command, config);
    for (const CheckRecord& c : report.checks) {
      std::printf("[%s]%s %s (measured=%.6g, tolerance=%.6g)\n", c.pass ? "PASS" : "FAIL",
                  c.gated ? "" : " (info)", c.name.c_str(), c.measured, c.tolerance);
    }
    std::printf("%s: %s in %.1fs, report at %s/report.json\n", command.c_str(),
                report.overall_pass() ? "all gated checks passed" : "GATED CHECKS FAILED",
                report.total_seconds, config.out_dir.c_str());
    return report.overall_pass() ? 0 : 1;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
