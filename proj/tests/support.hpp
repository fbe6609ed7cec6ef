#pragma once

#include "portsim/scenario.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace testsupport {

std::string data_path(std::string_view relative);
std::string read_text(const std::string& path);

// One parsed trace line.
struct TraceLine {
    double at = 0.0;
    std::uint64_t sequence = 0;
    std::string kind;
    std::string details;
};

std::vector<TraceLine> parse_trace(const std::string& text);

// Value of `key=` inside a details field; empty when absent.
std::string field(const std::string& details, std::string_view key);

struct TraceLeg {
    std::string mode;
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    double miles = 0.0;
    bool congested = false;
    double dollars = 0.0;
};

std::vector<TraceLeg> trace_legs(const std::vector<TraceLine>& lines);

// Operating cost recomputed from the legs named in a trace. Distances, rates
// and congestion are worked out here from the scenario, not read back from
// the trace. Throws std::runtime_error if a leg's logged miles disagree.
double walk_operating_cost(const portsim::Scenario& scenario, const std::vector<TraceLine>& lines);

// Plain haversine, kept separate from the library's version.
double oracle_miles(double lat1, double lon1, double lat2, double lon2);

// Equator longitude offset that is exactly `miles` away from longitude 0.
double degrees_for_miles(double miles);

} // namespace testsupport

namespace testsupport {

// P(F > f) by tanh-sinh quadrature of the beta density on [0, d2/(d2 + d1 f)].
double quadrature_f_tail(double f, double d1, double d2);

// The 50 (f, d1, d2) points the tail is checked on.
struct TailPoint {
    double f, d1, d2;
};
std::vector<TailPoint> tail_grid();

// Share of label permutations whose F is at least the observed F, counting
// the observed labelling itself.
double permutation_p(const std::vector<std::vector<double>>& groups, int permutations, std::uint64_t seed);

// Plain F statistic, written out separately from the library.
double f_statistic(const std::vector<std::vector<double>>& groups);

} // namespace testsupport

namespace testsupport {

// Hand-traced yearly operating cost of the two-warehouse fixture.
// p = 0: the train reaches rail-served W1 (4 degrees out, short-haul rate),
// drops the 60 t W1 can hold, drops the other 40 t once W1's trucks have
// loaded, and returns; W1's trucks need three trips (50, 10, 40 t) to the
// destination 5 degrees on. p = 1: W2 (8 degrees, long-haul rate) is the
// only warehouse that takes the whole train, so one drop there and two
// truck trips (50, 50 t) of 1 degree each.
double fixture_expected_cost(int p);

} // namespace testsupport
