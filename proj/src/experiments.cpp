#include "portsim/experiments.hpp"

#include "portsim/errors.hpp"
#include "portsim/install.hpp"
#include "portsim/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <limits>
#include <string>

namespace portsim {

RunResult run_single(const Scenario& scenario, const ModelSetting& setting, int p, std::uint64_t seed,
                     const RunOptions& options)
{
    RngStream install_stream(seed, "install");
    Installation inst = install_intermodal(scenario, p, install_stream);
    RunOutcome outcome = simulate(inst.scenario, setting, seed, options);

    RunResult r;
    r.setting = setting;
    r.p = p;
    r.seed = seed;
    r.cost = std::move(outcome.cost);
    r.cost.set_capital_dollars(inst.capital_dollars);
    r.demand = std::move(outcome.demand);
    r.port_fleet_utilization = outcome.port_fleet_utilization;
    r.port_rail_utilization = outcome.port_rail_utilization;
    r.warehouse_utilization = std::move(outcome.warehouse_utilization);
    r.dwell = outcome.dwell;
    r.upgraded = std::move(inst.upgraded);
    return r;
}

std::vector<RunResult> run_jobs_serial(const Scenario& scenario, std::span<const ReplicationJob> jobs)
{
    std::vector<RunResult> out;
    out.reserve(jobs.size());
    for (const auto& job : jobs) {
        out.push_back(run_single(scenario, job.setting, job.p, job.seed));
    }
    return out;
}

std::vector<RunResult> run_jobs_parallel(const Scenario& scenario, std::span<const ReplicationJob> jobs, int threads)
{
    std::vector<RunResult> out(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    const int n = static_cast<int>(jobs.size());
    const int team = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
    for (int i = 0; i < n; ++i) {
        const auto& job = jobs[static_cast<std::size_t>(i)];
        try {
            out[static_cast<std::size_t>(i)] = run_single(scenario, job.setting, job.p, job.seed);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }

    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

std::vector<ReplicationJob> variation_jobs(const ExperimentPlan& plan)
{
    if (plan.iterations < 1) {
        throw ValidationError("iterations", "must be at least 1");
    }
    if (plan.settings.empty()) {
        throw ValidationError("settings", "at least one setting is required");
    }
    if (plan.run_budget && *plan.run_budget < 1) {
        throw ValidationError("run_budget", "must be at least 1");
    }
    std::vector<ReplicationJob> jobs;
    for (std::size_t s = 0; s < plan.settings.size(); ++s) {
        int n = plan.iterations;
        if (s == 0 && plan.run_budget) {
            n = std::min(n, *plan.run_budget);
        }
        for (int i = 0; i < n; ++i) {
            jobs.push_back({plan.settings[s], plan.p, plan.base_seed + static_cast<std::uint64_t>(i)});
        }
    }
    return jobs;
}

VariationResult run_variation(const ExperimentPlan& plan, int threads)
{
    const int feasible = plan.scenario.non_intermodal_count();
    if (plan.p < 0 || plan.p > feasible) {
        throw ValidationError("p", "must be between 0 and " + std::to_string(feasible));
    }
    const auto jobs = variation_jobs(plan);
    const auto results = run_jobs_parallel(plan.scenario, jobs, threads);

    VariationResult out;
    out.runs.reserve(results.size());
    for (const auto& r : results) {
        out.runs.push_back(to_row(r));
        auto wh = warehouse_rows(r);
        out.warehouses.insert(out.warehouses.end(), wh.begin(), wh.end());
    }
    out.summary = summarize(out.runs);
    return out;
}

std::vector<NamedAnova> variation_anova(std::span<const RunRow> runs)
{
    std::vector<std::string> labels;
    std::vector<std::vector<std::vector<double>>> groups(4);
    for (const auto& r : runs) {
        auto it = std::find(labels.begin(), labels.end(), r.setting);
        std::size_t g = static_cast<std::size_t>(it - labels.begin());
        if (it == labels.end()) {
            labels.push_back(r.setting);
            for (auto& metric : groups) {
                metric.emplace_back();
            }
        }
        groups[0][g].push_back(r.port_fleet_util);
        groups[1][g].push_back(r.port_rail_util);
        groups[2][g].push_back(r.operating_cost);
        groups[3][g].push_back(r.unmet_tons);
    }
    static const char* const kNames[] = {"port_fleet_util", "port_rail_util", "operating_cost", "unmet_tons"};
    std::vector<NamedAnova> out;
    for (std::size_t m = 0; m < groups.size(); ++m) {
        out.push_back({kNames[m], anova_one_way(groups[m])});
    }
    return out;
}

ModelSetting default_optimization_setting()
{
    return *parse_setting("DRD-0-72-N-WHS");
}

std::size_t best_row(std::span<const OptimizeRow> table)
{
    if (table.empty()) {
        throw Error("empty optimization table");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < table.size(); ++i) {
        const bool better = table[i].mean_objective < table[best].mean_objective ||
                            (table[i].mean_objective == table[best].mean_objective && table[i].p < table[best].p);
        if (better) {
            best = i;
        }
    }
    return best;
}

OptimizationResult optimize_p(const OptimizationPlan& plan, int threads)
{
    const int feasible = plan.scenario.non_intermodal_count();
    std::vector<ValidationIssue> issues;
    if (plan.p_min < 0 || plan.p_max > feasible) {
        issues.push_back({"p_range", "must lie within 0.." + std::to_string(feasible)});
    }
    if (plan.p_min > plan.p_max) {
        issues.push_back({"p_range", "p_min exceeds p_max"});
    }
    if (plan.replications < 1) {
        issues.push_back({"replications", "must be at least 1"});
    }
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }

    std::vector<ReplicationJob> jobs;
    for (int p = plan.p_min; p <= plan.p_max; ++p) {
        for (int r = 0; r < plan.replications; ++r) {
            jobs.push_back({plan.setting, p, plan.base_seed + static_cast<std::uint64_t>(r)});
        }
    }
    const auto results = run_jobs_parallel(plan.scenario, jobs, threads);

    OptimizationResult out;
    std::size_t k = 0;
    for (int p = plan.p_min; p <= plan.p_max; ++p) {
        OptimizeRow row;
        row.p = p;
        row.replications = static_cast<std::size_t>(plan.replications);
        row.min_objective = std::numeric_limits<double>::infinity();
        double sum = 0.0;
        double unmet = 0.0;
        for (int r = 0; r < plan.replications; ++r, ++k) {
            const auto& res = results[k];
            double objective = res.cost.operating_dollars();
            if (plan.objective == Objective::OperatingPlusCapital) {
                objective += res.cost.capital_dollars();
            }
            sum += objective;
            unmet += unmet_demand(res.demand);
            row.min_objective = std::min(row.min_objective, objective);
        }
        row.mean_objective = sum / plan.replications;
        row.mean_unmet_tons = unmet / plan.replications;
        out.table.push_back(row);
    }
    const auto best = best_row(out.table);
    out.best_p = out.table[best].p;
    out.best_mean_objective = out.table[best].mean_objective;
    return out;
}

} // namespace portsim
