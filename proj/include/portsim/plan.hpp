#pragma once

#include "portsim/experiments.hpp"

#include <filesystem>
#include <string_view>
#include <variant>

namespace portsim {

using PlanFile = std::variant<ExperimentPlan, OptimizationPlan>;

// JSON plan naming a scenario file (relative paths resolve against the plan's
// directory) and either a sweep or an optimization:
//   {"kind": "sweep", "scenario": "...", "settings": "all" | [labels],
//    "iterations": 100, "base_seed": 1, "run_budget": 69, "p": 0}
//   {"kind": "optimize", "scenario": "...", "setting": "DRD-0-72-N-WHS",
//    "p_range": [0, 10], "replications": 5, "base_seed": 1, "objective": "operating" | "total"}
PlanFile load_plan(std::string_view document, const std::filesystem::path& base_dir);
PlanFile load_plan_file(const std::filesystem::path& path);

// "all" or a comma-separated list of labels.
std::vector<ModelSetting> parse_setting_list(std::string_view text);

} // namespace portsim
