#include "support.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace testsupport {

namespace {

constexpr double kRadius = 3958.8;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

} // namespace

std::string data_path(std::string_view relative)
{
    return std::string(PORTSIM_DATA_DIR) + "/" + std::string(relative);
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<TraceLine> parse_trace(const std::string& text)
{
    std::vector<TraceLine> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto cols = split(line, '\t');
        if (cols.size() != 4) {
            throw std::runtime_error("bad trace line: " + line);
        }
        out.push_back({std::stod(cols[0]), std::stoull(cols[1]), cols[2], cols[3]});
    }
    return out;
}

std::string field(const std::string& details, std::string_view key)
{
    const std::string needle = std::string(key) + "=";
    std::size_t pos = 0;
    while ((pos = details.find(needle, pos)) != std::string::npos) {
        if (pos == 0 || details[pos - 1] == ' ') {
            const auto start = pos + needle.size();
            const auto end = details.find(' ', start);
            return details.substr(start, end == std::string::npos ? std::string::npos : end - start);
        }
        pos += needle.size();
    }
    return {};
}

std::vector<TraceLeg> trace_legs(const std::vector<TraceLine>& lines)
{
    std::vector<TraceLeg> legs;
    for (const auto& l : lines) {
        const std::string v = field(l.details, "leg");
        if (v.empty()) {
            continue;
        }
        const auto parts = split(v, ',');
        if (parts.size() != 6) {
            throw std::runtime_error("bad leg field: " + v);
        }
        legs.push_back({parts[0], static_cast<std::uint32_t>(std::stoul(parts[1])),
                        static_cast<std::uint32_t>(std::stoul(parts[2])), std::stod(parts[3]), parts[4] == "1",
                        std::stod(parts[5])});
    }
    return legs;
}

double oracle_miles(double lat1, double lon1, double lat2, double lon2)
{
    const double r = std::numbers::pi / 180.0;
    const double dlat = (lat2 - lat1) * r;
    const double dlon = (lon2 - lon1) * r;
    const double h = std::pow(std::sin(dlat / 2), 2) + std::cos(lat1 * r) * std::cos(lat2 * r) * std::pow(std::sin(dlon / 2), 2);
    return 2.0 * kRadius * std::asin(std::min(1.0, std::sqrt(h)));
}

double degrees_for_miles(double miles)
{
    return miles / kRadius * 180.0 / std::numbers::pi;
}

double walk_operating_cost(const portsim::Scenario& sc, const std::vector<TraceLine>& lines)
{
    auto node = [&](std::uint32_t id) -> const portsim::Node& {
        for (const auto& n : sc.nodes) {
            if (portsim::to_int(n.id) == id) {
                return n;
            }
        }
        throw std::runtime_error("trace names unknown node " + std::to_string(id));
    };
    auto congested = [&](std::uint32_t a, std::uint32_t b) {
        if (sc.congested_links) {
            for (const auto& [x, y] : *sc.congested_links) {
                const auto xi = portsim::to_int(x), yi = portsim::to_int(y);
                if ((xi == a && yi == b) || (xi == b && yi == a)) {
                    return true;
                }
            }
            return false;
        }
        return node(a).state == "CA" && node(b).state == "CA";
    };
    const auto& c = sc.cost_table;
    double total = 0.0;
    for (const auto& leg : trace_legs(lines)) {
        const auto& a = node(leg.from);
        const auto& b = node(leg.to);
        const double miles = oracle_miles(a.location.lat, a.location.lon, b.location.lat, b.location.lon);
        if (std::abs(miles - leg.miles) > 1e-6 * std::max(1.0, miles)) {
            throw std::runtime_error("leg miles disagree for " + std::to_string(leg.from) + "->" + std::to_string(leg.to));
        }
        if (leg.mode == "rail") {
            total += miles * (miles >= c.rail_short_haul_threshold_miles ? c.rail_long_per_mile : c.rail_short_per_mile);
        } else {
            total += miles * (congested(leg.from, leg.to) ? c.truck_congested_per_mile : c.truck_free_per_mile);
        }
    }
    return total;
}

} // namespace testsupport
