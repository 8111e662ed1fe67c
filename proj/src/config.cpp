#include "beltrami/config.hpp"

#include <algorithm>
#include <fstream>

namespace beltrami {

namespace {
template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}
}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  if (!j.is_object()) throw DomainError("config: top level must be a JSON object");
  for (const auto& item : j.items()) {
    static const char* known[] = {"k",     "grid_n", "pad_half_width", "tol",
                                  "max_iter", "j_min", "j_max",  "angles",
                                  "pairs", "seed",   "fit_tol", "out_dir",
                                  "formats", "profile", "jobs"};
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return item.key() == k;
        }) == std::end(known))
      throw DomainError("config." + item.key() + ": unknown field");
  }
  read_field(j, "k", c.k);
  read_field(j, "grid_n", c.grid_n);
  read_field(j, "pad_half_width", c.pad_half_width);
  read_field(j, "tol", c.tol);
  read_field(j, "max_iter", c.max_iter);
  read_field(j, "j_min", c.j_min);
  read_field(j, "j_max", c.j_max);
  read_field(j, "angles", c.angles);
  read_field(j, "pairs", c.pairs);
  read_field(j, "seed", c.seed);
  read_field(j, "fit_tol", c.fit_tol);
  read_field(j, "out_dir", c.out_dir);
  read_field(j, "formats", c.formats);
  read_field(j, "profile", c.profile);
  read_field(j, "jobs", c.jobs);
  if (!c.profile.empty()) c.apply_profile(c.profile);
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

void ExperimentConfig::apply_profile(const std::string& name) {
  profile = name;
  if (name == "smoke") {
    grid_n = 256;
    j_min = 4;
    j_max = 8;
    pairs = 64;
    angles = 16;
  } else if (name == "full") {
    grid_n = 2048;
    j_min = 5;
    j_max = 14;
    pairs = 256;
    angles = 16;
  } else {
    throw DomainError("config.profile: unknown profile '" + name + "'");
  }
}

void ExperimentConfig::validate() const {
  if (k < 1 || k > 3) throw DomainError("config.k: must be in {1,2,3}");
  if (grid_n < 256 || grid_n % 2 != 0)
    throw DomainError("config.grid_n: must be even and >= 256");
  if (pad_half_width < 2.0) throw DomainError("config.pad_half_width: must be >= 2");
  if (tol <= 0.0) throw DomainError("config.tol: must be positive");
  if (max_iter <= 0) throw DomainError("config.max_iter: must be positive");
  if (j_min >= j_max) throw DomainError("config.j_min: must be < j_max");
  if (j_min < 3) throw DomainError("config.j_min: probes must stay at r <= 1/8 (j_min >= 3)");
  if (j_max > 30) throw DomainError("config.j_max: must be <= 30");
  if (angles < 16) throw DomainError("config.angles: must be >= 16");
  if (pairs < 1) throw DomainError("config.pairs: must be positive");
  if (fit_tol <= 0.0 || fit_tol >= 1.0)
    throw DomainError("config.fit_tol: must be a fraction in (0,1)");
  if (out_dir.empty()) throw DomainError("config.out_dir: must not be empty");
  if (jobs < 1 || jobs > 64) throw DomainError("config.jobs: must be in 1..64");
  for (const std::string& f : formats)
    if (f != "csv" && f != "json" && f != "svg")
      throw DomainError("config.formats: unknown format '" + f + "'");
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["grid_n"] = grid_n;
  j["pad_half_width"] = pad_half_width;
  j["tol"] = tol;
  j["max_iter"] = max_iter;
  j["j_min"] = j_min;
  j["j_max"] = j_max;
  j["angles"] = angles;
  j["pairs"] = pairs;
  j["seed"] = seed;
  j["fit_tol"] = fit_tol;
  j["out_dir"] = out_dir;
  j["formats"] = formats;
  j["profile"] = profile;
  j["jobs"] = jobs;
  return j;
}

bool ExperimentConfig::wants_format(const std::string& fmt) const {
  return std::find(formats.begin(), formats.end(), fmt) != formats.end();
}

}  // namespace beltrami
