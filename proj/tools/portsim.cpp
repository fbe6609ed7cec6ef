#include "portsim/errors.hpp"
#include "portsim/experiments.hpp"
#include "portsim/plan.hpp"
#include "portsim/report.hpp"
#include "portsim/scenario.hpp"
#include "portsim/settings.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace portsim;

namespace {

enum Exit : int { kOk = 0, kValidation = 1, kRuntime = 2, kUsage = 3 };

// Bad invocation that surfaces after parsing (unreadable input, bad env).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
}

Scenario load_checked(const fs::path& path)
{
    return load_scenario(read_file(path));
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("PORTSIM_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) {
                return v;
            }
        } catch (const std::exception&) {
        }
        throw UsageError(fmt::format("PORTSIM_SEED is not an unsigned integer: '{}'", env));
    }
    return 1;
}

fs::path prepare_out(const std::string& dir)
{
    fs::path out(dir);
    fs::create_directories(out);
    return out;
}

void write_sweep(const fs::path& out, const VariationResult& result)
{
    write_file(out / "runs.csv", runs_csv(result.runs));
    write_file(out / "summary.csv", summary_csv(result.summary));
    write_file(out / "warehouse_util.csv", warehouse_util_csv(result.warehouses));
}

void print_summary(const std::vector<SummaryRow>& rows)
{
    for (const auto& row : rows) {
        std::cout << summary_line(row) << '\n';
    }
}

// ANOVA needs two settings with two runs each; check before spending the runs.
void check_anova_feasible(const ExperimentPlan& plan)
{
    const int first = plan.run_budget ? std::min(*plan.run_budget, plan.iterations) : plan.iterations;
    if (plan.settings.size() >= 2 && (plan.iterations < 2 || first < 2)) {
        throw ValidationError("iterations", "ANOVA needs at least 2 runs per setting");
    }
}

int do_sweep(const ExperimentPlan& plan, const fs::path& out, int jobs)
{
    check_anova_feasible(plan);
    const auto result = run_variation(plan, jobs);
    write_sweep(out, result);
    print_summary(result.summary);
    if (plan.settings.size() < 2) {
        std::cerr << "note: one setting, anova.csv not written\n";
        return kOk;
    }
    const auto anova = variation_anova(result.runs);
    write_file(out / "anova.csv", anova_csv(anova));
    for (const auto& a : anova) {
        std::cout << fmt::format("anova {}: F = {:.4g}, p = {:.3g}\n", a.metric, a.result.f_statistic,
                                 a.result.p_value);
    }
    return kOk;
}

int do_optimize(const OptimizationPlan& plan, const fs::path& out, int jobs)
{
    const auto result = optimize_p(plan, jobs);
    write_file(out / "optimize.csv", optimize_csv(result.table));
    std::cout << fmt::format("best p = {} (mean objective {:.2f}) over p = {}..{}, {} replications\n", result.best_p,
                             result.best_mean_objective, plan.p_min, plan.p_max, plan.replications);
    return kOk;
}

int cmd_validate(const std::string& path)
{
    const std::string doc = read_file(path);
    const auto issues = validate_scenario_document(doc);
    if (!issues.empty()) {
        for (const auto& issue : issues) {
            std::cerr << (issue.field.empty() ? "scenario" : issue.field) << ": " << issue.message << '\n';
        }
        return kValidation;
    }
    const Scenario sc = load_scenario(doc);
    std::size_t ports = 0, warehouses = 0, destinations = 0;
    for (const auto& n : sc.nodes) {
        switch (n.kind) {
        case NodeKind::Port: ++ports; break;
        case NodeKind::Warehouse: ++warehouses; break;
        case NodeKind::Destination: ++destinations; break;
        }
    }
    std::cout << fmt::format("OK: {} port, {} warehouses, {} destinations\n", ports, warehouses, destinations);
    return kOk;
}

ModelSetting setting_or_throw(const std::string& label)
{
    auto s = parse_setting(label);
    if (!s) {
        throw ValidationError("setting", "unknown setting '" + label + "'");
    }
    return *s;
}

struct RunArgs {
    std::string scenario;
    std::string setting = "Random-WHS";
    int p = 0;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    bool trace = false;
};

int cmd_run(const RunArgs& a)
{
    const Scenario sc = load_checked(a.scenario);
    const ModelSetting setting = setting_or_throw(a.setting);
    const std::uint64_t seed = resolve_seed(a.seed);
    std::ostringstream trace;
    RunOptions options;
    if (a.trace) {
        options.trace = &trace;
    }
    const RunResult result = run_single(sc, setting, a.p, seed, options);
    const fs::path out = prepare_out(a.out);
    const std::vector<RunRow> rows{to_row(result)};
    write_file(out / "runs.csv", runs_csv(rows));
    const auto summary = summarize(rows);
    write_file(out / "summary.csv", summary_csv(summary));
    write_file(out / "warehouse_util.csv", warehouse_util_csv(warehouse_rows(result)));
    if (a.trace) {
        write_file(out / "trace.tsv", trace.str());
    }
    print_summary(summary);
    return kOk;
}

struct SweepArgs {
    std::string scenario;
    std::string settings = "all";
    int iters = 100;
    std::optional<std::uint64_t> seed;
    std::optional<int> budget;
    std::string out = ".";
    int jobs = 0;
};

int cmd_sweep(const SweepArgs& a)
{
    ExperimentPlan plan;
    plan.scenario = load_checked(a.scenario);
    plan.settings = parse_setting_list(a.settings);
    plan.iterations = a.iters;
    plan.base_seed = resolve_seed(a.seed);
    plan.run_budget = a.budget;
    return do_sweep(plan, prepare_out(a.out), a.jobs);
}

struct OptimizeArgs {
    std::string scenario;
    int p_min = 0;
    int p_max = 10;
    int reps = 5;
    std::optional<std::uint64_t> seed;
    std::string objective = "operating";
    std::string setting;
    std::string out = ".";
    int jobs = 0;
};

int cmd_optimize(const OptimizeArgs& a)
{
    OptimizationPlan plan;
    plan.scenario = load_checked(a.scenario);
    plan.setting = a.setting.empty() ? default_optimization_setting() : setting_or_throw(a.setting);
    plan.p_min = a.p_min;
    plan.p_max = a.p_max;
    plan.replications = a.reps;
    plan.base_seed = resolve_seed(a.seed);
    plan.objective = a.objective == "total" ? Objective::OperatingPlusCapital : Objective::Operating;
    return do_optimize(plan, prepare_out(a.out), a.jobs);
}

int cmd_plan(const std::string& path, const std::string& out_dir, int jobs)
{
    const std::string doc = read_file(path);
    const PlanFile plan = load_plan(doc, fs::path(path).parent_path());
    const fs::path out = prepare_out(out_dir);
    if (const auto* sweep = std::get_if<ExperimentPlan>(&plan)) {
        return do_sweep(*sweep, out, jobs);
    }
    return do_optimize(std::get<OptimizationPlan>(plan), out, jobs);
}

void report_validation(const ValidationError& e)
{
    for (const auto& issue : e.issues()) {
        std::cerr << "error: " << (issue.field.empty() ? "input" : issue.field) << ": " << issue.message << '\n';
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Port-to-warehouse intermodal freight simulator"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a scenario file and print a node count");
    validate->add_option("scenario", validate_path, "Scenario JSON")->required();

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Run one simulation and write its reports");
    run->add_option("scenario", run_args.scenario, "Scenario JSON")->required();
    run->add_option("--setting", run_args.setting, "Setting label, e.g. N-WHS or DRD-0-72")->capture_default_str();
    run->add_option("--p", run_args.p, "Number of warehouses to upgrade with rail")->capture_default_str();
    run->add_option("--seed", run_args.seed, "Run seed (falls back to PORTSIM_SEED, then 1)");
    run->add_option("--out", run_args.out, "Output directory")->capture_default_str();
    run->add_flag("--trace", run_args.trace, "Also write trace.tsv");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Replicate settings with common seeds and compare them");
    sweep->add_option("scenario", sweep_args.scenario, "Scenario JSON")->required();
    sweep->add_option("--settings", sweep_args.settings, "'all' or comma-separated labels")->capture_default_str();
    sweep->add_option("--iters", sweep_args.iters, "Replications per setting")->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "Base seed; replication i uses seed + i");
    sweep->add_option("--budget", sweep_args.budget, "Cap on runs for the first setting");
    sweep->add_option("--out", sweep_args.out, "Output directory")->capture_default_str();
    sweep->add_option("--jobs", sweep_args.jobs, "Worker threads (0 = all processors)")->capture_default_str();

    OptimizeArgs opt_args;
    auto* optimize = app.add_subcommand("optimize", "Scan the number of rail upgrades p");
    optimize->add_option("scenario", opt_args.scenario, "Scenario JSON")->required();
    optimize->add_option("--p-min", opt_args.p_min, "Smallest p")->capture_default_str();
    optimize->add_option("--p-max", opt_args.p_max, "Largest p")->capture_default_str();
    optimize->add_option("--reps", opt_args.reps, "Replications per p")->capture_default_str();
    optimize->add_option("--seed", opt_args.seed, "Base seed; replication i uses seed + i");
    optimize->add_option("--objective", opt_args.objective, "operating or total (adds upgrade cost)")
        ->check(CLI::IsMember({"operating", "total"}))
        ->capture_default_str();
    optimize->add_option("--setting", opt_args.setting, "Setting label (default DRD-0-72-N-WHS)");
    optimize->add_option("--out", opt_args.out, "Output directory")->capture_default_str();
    optimize->add_option("--jobs", opt_args.jobs, "Worker threads (0 = all processors)")->capture_default_str();

    std::string plan_path;
    std::string plan_out = ".";
    int plan_jobs = 0;
    auto* plan = app.add_subcommand("plan", "Run a sweep or optimization described by a JSON plan");
    plan->add_option("plan", plan_path, "Plan JSON")->required();
    plan->add_option("--out", plan_out, "Output directory")->capture_default_str();
    plan->add_option("--jobs", plan_jobs, "Worker threads (0 = all processors)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) {
            return cmd_validate(validate_path);
        }
        if (*run) {
            return cmd_run(run_args);
        }
        if (*sweep) {
            return cmd_sweep(sweep_args);
        }
        if (*optimize) {
            return cmd_optimize(opt_args);
        }
        return cmd_plan(plan_path, plan_out, plan_jobs);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        report_validation(e);
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
}
