#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "beltrami/config.hpp"
#include "beltrami/seminorms.hpp"

namespace beltrami {

inline constexpr const char* kVersion = "0.1.0";

struct CheckRecord {
  std::string name;
  double target = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool gated = true;  // ungated records are informational only
};

/// Per-run machine-readable report.  Overall pass is the conjunction of the
/// gated checks; timing lives under a single "timing" key so consumers can
/// strip it before byte-comparing runs.
struct RunReport {
  std::string command;
  ExperimentConfig config;
  std::vector<CheckRecord> checks;
  std::map<std::string, double> stage_seconds;
  double total_seconds = 0.0;

  bool overall_pass() const;
  void add(CheckRecord record);
  void merge(const RunReport& stage, const std::string& prefix);
  nlohmann::ordered_json to_json() const;
};

void write_report_json(const RunReport& report, const std::string& path);

/// CSV schema: scale_r, sqrt_neg_log_r, value, pairs.
void write_seminorm_csv(const SeminormTable& table, const std::string& path);

/// JSON fit record: {slope, intercept, r2, window, target, tolerance, pass}.
void write_fit_json(const LogFit& fit, double target, double tolerance, bool pass,
                    const std::string& path);

struct DefectRow {
  Complex point;
  double step;
  double defect;
};
void write_defect_csv(const std::vector<DefectRow>& rows, const std::string& path);

/// Scatter of M(r) against sqrt(-log r) with the fitted line and the target
/// slope drawn.  Plots are conveniences, never gated.
void write_fit_svg(const SeminormTable& table, const LogFit& fit, double target_slope,
                   const std::string& path);

}  // namespace beltrami
