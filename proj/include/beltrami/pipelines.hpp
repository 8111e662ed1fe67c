#pragma once

#include <string>

#include "beltrami/config.hpp"
#include "beltrami/report.hpp"

namespace beltrami {

/// Stage pipelines.  Each writes its artifacts (CSV/JSON/SVG per the config
/// formats) into config.out_dir and returns the checks it ran; none of them
/// writes the top-level report.json, which run_command owns.
RunReport run_coeff_check(const ExperimentConfig& config);
RunReport run_transform_selftest(const ExperimentConfig& config);
RunReport run_solve_chart(const ExperimentConfig& config);
RunReport run_lemma_blowup(const ExperimentConfig& config);
RunReport run_chart_regularity(const ExperimentConfig& config);
RunReport run_nijenhuis_check(const ExperimentConfig& config);
RunReport run_all(const ExperimentConfig& config);

/// Dispatch by command name (the CLI subcommands); writes report.json into
/// out_dir.  Stage exceptions become failed checks, so the report survives
/// pipeline errors and the exit contract stays "0 iff all gated checks pass".
RunReport run_command(const std::string& command, const ExperimentConfig& config);

}  // namespace beltrami
