#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "beltrami/types.hpp"

namespace beltrami {

/// One experiment configuration: a single JSON document; CLI flags override
/// file values, profiles are named presets applied in between.
struct ExperimentConfig {
  int k = 1;
  int grid_n = 512;
  double pad_half_width = 2.0;
  double tol = 1e-10;
  int max_iter = 50;
  int j_min = 5;
  int j_max = 14;
  int angles = 16;
  int pairs = 256;
  std::uint64_t seed = 20260810;
  double fit_tol = 0.15;
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv", "json"};
  std::string profile;  // "", "smoke", "full"
  int jobs = 2;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
  void apply_profile(const std::string& name);
  /// Throws DomainError naming the offending field path.
  void validate() const;
  nlohmann::ordered_json to_json() const;

  bool wants_format(const std::string& fmt) const;
};

}  // namespace beltrami
