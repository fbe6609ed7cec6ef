#pragma once

#include "portsim/metrics.hpp"
#include "portsim/model.hpp"
#include "portsim/report.hpp"
#include "portsim/scenario.hpp"
#include "portsim/settings.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace portsim {

// Upgrades p warehouses (stream "install"), then runs the model.
RunResult run_single(const Scenario& scenario, const ModelSetting& setting, int p, std::uint64_t seed,
                     const RunOptions& options = {});

struct ReplicationJob {
    ModelSetting setting;
    int p = 0;
    std::uint64_t seed = 0;
};

// Results come back in job order either way.
std::vector<RunResult> run_jobs_serial(const Scenario& scenario, std::span<const ReplicationJob> jobs);
// threads <= 0 uses the OpenMP default.
std::vector<RunResult> run_jobs_parallel(const Scenario& scenario, std::span<const ReplicationJob> jobs,
                                         int threads = 0);

struct ExperimentPlan {
    Scenario scenario;
    std::vector<ModelSetting> settings;
    int p = 0;
    int iterations = 100;
    std::uint64_t base_seed = 1;
    std::optional<int> run_budget;  // caps the first setting only
};

// Seeds base_seed + i for every setting, so settings share random numbers.
std::vector<ReplicationJob> variation_jobs(const ExperimentPlan& plan);

struct VariationResult {
    std::vector<RunRow> runs;
    std::vector<SummaryRow> summary;
    std::vector<WarehouseUtilRow> warehouses;
};

VariationResult run_variation(const ExperimentPlan& plan, int threads = 0);

// One-way ANOVA across settings for fleet utilization, rail utilization,
// operating cost and unmet demand. Throws ValidationError when a setting has
// fewer than two runs or there are fewer than two settings.
std::vector<NamedAnova> variation_anova(std::span<const RunRow> runs);

enum class Objective { Operating, OperatingPlusCapital };

struct OptimizationPlan {
    Scenario scenario;
    ModelSetting setting;
    int p_min = 0;
    int p_max = 10;
    int replications = 5;
    std::uint64_t base_seed = 1;
    Objective objective = Objective::Operating;
};

ModelSetting default_optimization_setting();

struct OptimizationResult {
    int best_p = 0;
    double best_mean_objective = 0.0;
    std::vector<OptimizeRow> table;
};

// Every p gets the same seed ladder; each replication draws its own upgrade
// set. The best p has the smallest mean objective, ties to the smaller p.
OptimizationResult optimize_p(const OptimizationPlan& plan, int threads = 0);

// argmin over a table, ties to the smaller p.
std::size_t best_row(std::span<const OptimizeRow> table);

} // namespace portsim
