#pragma once

#include "portsim/metrics.hpp"
#include "portsim/stats.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace portsim {

// One line of runs.csv. Missing dwell (no pickups by that mode) is written as NA.
struct RunRow {
    std::string setting;
    int p = 0;
    std::uint64_t seed = 0;
    double unmet_tons = 0.0;
    double port_fleet_util = 0.0;
    double port_rail_util = 0.0;
    double operating_cost = 0.0;
    double capital_cost = 0.0;
    std::optional<double> rail_dwell_days;
    std::optional<double> truck_dwell_days;

    bool operator==(const RunRow&) const = default;
};

RunRow to_row(const RunResult& result);

inline constexpr std::string_view kRunsHeader =
    "setting,p,seed,unmet_tons,port_fleet_util,port_rail_util,operating_cost,capital_cost,rail_dwell_days,"
    "truck_dwell_days";

// Throws Error on empty input.
std::string runs_csv(std::span<const RunRow> rows);
std::vector<RunRow> parse_runs_csv(std::string_view text);

struct Stat {
    std::optional<double> mean;
    std::optional<double> min;
};

// Mean and minimum of each runs.csv metric for one setting. Dwell columns
// skip NA entries.
struct SummaryRow {
    std::string setting;
    std::size_t runs = 0;
    Stat unmet_tons;
    Stat port_fleet_util;
    Stat port_rail_util;
    Stat operating_cost;
    Stat capital_cost;
    Stat rail_dwell_days;
    Stat truck_dwell_days;
};

// Groups by setting in order of first appearance.
std::vector<SummaryRow> summarize(std::span<const RunRow> rows);
std::string summary_csv(std::span<const SummaryRow> rows);

// "Random-WHS: unmet 424263.8 (413836) | fleet 34.8% (30.1%) | ..." mean with min in parentheses.
std::string summary_line(const SummaryRow& row);

enum class ReportFormat { Csv, Json };

// Runs plus the per-setting summary. CSV puts the summary after a blank line.
std::string emit_report(std::span<const RunRow> rows, ReportFormat format);

struct WarehouseUtilRow {
    std::string setting;
    std::uint64_t seed = 0;
    std::uint32_t warehouse_id = 0;
    double utilization = 0.0;
};

std::vector<WarehouseUtilRow> warehouse_rows(const RunResult& result);
std::string warehouse_util_csv(std::span<const WarehouseUtilRow> rows);

struct NamedAnova {
    std::string metric;
    AnovaResult result;
};

std::string anova_csv(std::span<const NamedAnova> rows);

struct OptimizeRow {
    int p = 0;
    std::size_t replications = 0;
    double mean_objective = 0.0;
    double min_objective = 0.0;
    double mean_unmet_tons = 0.0;
};

std::string optimize_csv(std::span<const OptimizeRow> rows);

// Shortest text that reads back to the same double.
std::string format_number(double value);

} // namespace portsim
