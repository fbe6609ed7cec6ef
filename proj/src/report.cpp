#include "portsim/report.hpp"

#include "portsim/errors.hpp"

#include <fmt/format.h>

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace portsim {

namespace {

constexpr std::string_view kNa = "NA";

std::string format_optional(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string(kNa);
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(std::string_view text, std::size_t line_no)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(fmt::format("runs.csv line {}: bad number '{}'", line_no, text));
    }
    return v;
}

template <typename Int>
Int parse_int(std::string_view text, std::size_t line_no)
{
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(fmt::format("runs.csv line {}: bad integer '{}'", line_no, text));
    }
    return v;
}

std::optional<double> parse_optional(std::string_view text, std::size_t line_no)
{
    if (text == kNa) {
        return std::nullopt;
    }
    return parse_double(text, line_no);
}

class StatAcc {
public:
    void add(const std::optional<double>& v)
    {
        if (!v) {
            return;
        }
        sum_ += *v;
        min_ = std::min(min_, *v);
        ++n_;
    }

    Stat result() const
    {
        if (n_ == 0) {
            return {};
        }
        return {sum_ / static_cast<double>(n_), min_};
    }

private:
    double sum_ = 0.0;
    double min_ = std::numeric_limits<double>::infinity();
    std::size_t n_ = 0;
};

struct SummaryAcc {
    std::string setting;
    std::size_t runs = 0;
    StatAcc unmet, fleet, rail, operating, capital, rail_dwell, truck_dwell;
};

nlohmann::json stat_json(const Stat& s)
{
    nlohmann::json j;
    j["mean"] = s.mean ? nlohmann::json(*s.mean) : nlohmann::json(nullptr);
    j["min"] = s.min ? nlohmann::json(*s.min) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json optional_json(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string percent(const std::optional<double>& v)
{
    return v ? fmt::format("{:.1f}%", *v * 100.0) : std::string(kNa);
}

std::string fixed1(const std::optional<double>& v)
{
    return v ? fmt::format("{:.1f}", *v) : std::string(kNa);
}

} // namespace

std::string format_number(double value)
{
    return fmt::format("{}", value);
}

RunRow to_row(const RunResult& r)
{
    RunRow row;
    row.setting = r.setting.label;
    row.p = r.p;
    row.seed = r.seed;
    row.unmet_tons = unmet_demand(r.demand);
    row.port_fleet_util = r.port_fleet_utilization;
    row.port_rail_util = r.port_rail_utilization;
    row.operating_cost = r.cost.operating_dollars();
    row.capital_cost = r.cost.capital_dollars();
    row.rail_dwell_days = r.dwell.rail.mean_days;
    row.truck_dwell_days = r.dwell.truck.mean_days;
    return row;
}

std::string runs_csv(std::span<const RunRow> rows)
{
    if (rows.empty()) {
        throw Error("report needs at least one run");
    }
    std::string out(kRunsHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.setting, r.p, r.seed, format_number(r.unmet_tons),
                           format_number(r.port_fleet_util), format_number(r.port_rail_util),
                           format_number(r.operating_cost), format_number(r.capital_cost),
                           format_optional(r.rail_dwell_days), format_optional(r.truck_dwell_days));
    }
    return out;
}

std::vector<RunRow> parse_runs_csv(std::string_view text)
{
    std::vector<RunRow> rows;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            if (line != kRunsHeader) {
                throw Error("runs.csv: unexpected header");
            }
            header_seen = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 10) {
            throw Error(fmt::format("runs.csv line {}: expected 10 fields, found {}", line_no, f.size()));
        }
        RunRow r;
        r.setting = std::string(f[0]);
        r.p = parse_int<int>(f[1], line_no);
        r.seed = parse_int<std::uint64_t>(f[2], line_no);
        r.unmet_tons = parse_double(f[3], line_no);
        r.port_fleet_util = parse_double(f[4], line_no);
        r.port_rail_util = parse_double(f[5], line_no);
        r.operating_cost = parse_double(f[6], line_no);
        r.capital_cost = parse_double(f[7], line_no);
        r.rail_dwell_days = parse_optional(f[8], line_no);
        r.truck_dwell_days = parse_optional(f[9], line_no);
        rows.push_back(std::move(r));
    }
    if (!header_seen) {
        throw Error("runs.csv: missing header");
    }
    return rows;
}

std::vector<SummaryRow> summarize(std::span<const RunRow> rows)
{
    std::vector<SummaryAcc> accs;
    for (const auto& r : rows) {
        auto it = std::find_if(accs.begin(), accs.end(), [&](const SummaryAcc& a) { return a.setting == r.setting; });
        if (it == accs.end()) {
            accs.push_back({});
            accs.back().setting = r.setting;
            it = accs.end() - 1;
        }
        ++it->runs;
        it->unmet.add(r.unmet_tons);
        it->fleet.add(r.port_fleet_util);
        it->rail.add(r.port_rail_util);
        it->operating.add(r.operating_cost);
        it->capital.add(r.capital_cost);
        it->rail_dwell.add(r.rail_dwell_days);
        it->truck_dwell.add(r.truck_dwell_days);
    }
    std::vector<SummaryRow> out;
    out.reserve(accs.size());
    for (const auto& a : accs) {
        out.push_back({a.setting, a.runs, a.unmet.result(), a.fleet.result(), a.rail.result(), a.operating.result(),
                       a.capital.result(), a.rail_dwell.result(), a.truck_dwell.result()});
    }
    return out;
}

std::string summary_csv(std::span<const SummaryRow> rows)
{
    std::string out =
        "setting,runs,unmet_tons_mean,unmet_tons_min,port_fleet_util_mean,port_fleet_util_min,"
        "port_rail_util_mean,port_rail_util_min,operating_cost_mean,operating_cost_min,capital_cost_mean,"
        "capital_cost_min,rail_dwell_days_mean,rail_dwell_days_min,truck_dwell_days_mean,truck_dwell_days_min\n";
    for (const auto& r : rows) {
        out += r.setting;
        out += fmt::format(",{}", r.runs);
        for (const Stat* s : {&r.unmet_tons, &r.port_fleet_util, &r.port_rail_util, &r.operating_cost,
                              &r.capital_cost, &r.rail_dwell_days, &r.truck_dwell_days}) {
            out += fmt::format(",{},{}", format_optional(s->mean), format_optional(s->min));
        }
        out += '\n';
    }
    return out;
}

std::string summary_line(const SummaryRow& r)
{
    return fmt::format("{}: unmet {} ({}) | fleet {} ({}) | rail {} ({}) | cost {} ({}) | dwell rail {} d, truck {} d",
                       r.setting, fixed1(r.unmet_tons.mean), fixed1(r.unmet_tons.min), percent(r.port_fleet_util.mean),
                       percent(r.port_fleet_util.min), percent(r.port_rail_util.mean), percent(r.port_rail_util.min),
                       fixed1(r.operating_cost.mean), fixed1(r.operating_cost.min), fixed1(r.rail_dwell_days.mean),
                       fixed1(r.truck_dwell_days.mean));
}

std::string emit_report(std::span<const RunRow> rows, ReportFormat format)
{
    if (rows.empty()) {
        throw Error("report needs at least one run");
    }
    const auto summary = summarize(rows);
    if (format == ReportFormat::Csv) {
        return runs_csv(rows) + "\n" + summary_csv(summary);
    }
    nlohmann::json doc;
    doc["runs"] = nlohmann::json::array();
    for (const auto& r : rows) {
        doc["runs"].push_back({{"setting", r.setting},
                               {"p", r.p},
                               {"seed", r.seed},
                               {"unmet_tons", r.unmet_tons},
                               {"port_fleet_util", r.port_fleet_util},
                               {"port_rail_util", r.port_rail_util},
                               {"operating_cost", r.operating_cost},
                               {"capital_cost", r.capital_cost},
                               {"rail_dwell_days", optional_json(r.rail_dwell_days)},
                               {"truck_dwell_days", optional_json(r.truck_dwell_days)}});
    }
    doc["summary"] = nlohmann::json::array();
    for (const auto& s : summary) {
        doc["summary"].push_back({{"setting", s.setting},
                                  {"runs", s.runs},
                                  {"unmet_tons", stat_json(s.unmet_tons)},
                                  {"port_fleet_util", stat_json(s.port_fleet_util)},
                                  {"port_rail_util", stat_json(s.port_rail_util)},
                                  {"operating_cost", stat_json(s.operating_cost)},
                                  {"capital_cost", stat_json(s.capital_cost)},
                                  {"rail_dwell_days", stat_json(s.rail_dwell_days)},
                                  {"truck_dwell_days", stat_json(s.truck_dwell_days)}});
    }
    return doc.dump(2) + "\n";
}

std::vector<WarehouseUtilRow> warehouse_rows(const RunResult& result)
{
    std::vector<WarehouseUtilRow> out;
    out.reserve(result.warehouse_utilization.size());
    for (const auto& w : result.warehouse_utilization) {
        out.push_back({result.setting.label, result.seed, to_int(w.warehouse), w.utilization});
    }
    return out;
}

std::string warehouse_util_csv(std::span<const WarehouseUtilRow> rows)
{
    std::string out = "setting,seed,warehouse_id,utilization\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{}\n", r.setting, r.seed, r.warehouse_id, format_number(r.utilization));
    }
    return out;
}

std::string anova_csv(std::span<const NamedAnova> rows)
{
    std::string out = "metric,f,df_between,df_within,p_value\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{}\n", r.metric, format_number(r.result.f_statistic), r.result.df_between,
                           r.result.df_within, format_number(r.result.p_value));
    }
    return out;
}

std::string optimize_csv(std::span<const OptimizeRow> rows)
{
    std::string out = "p,replications,mean_objective,min_objective,mean_unmet_tons\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{}\n", r.p, r.replications, format_number(r.mean_objective),
                           format_number(r.min_objective), format_number(r.mean_unmet_tons));
    }
    return out;
}

} // namespace portsim
