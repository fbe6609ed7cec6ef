#pragma once

#include <string_view>

namespace portsim {

enum class Mode { Truck, Rail };

std::string_view to_string(Mode mode);

// Per-vehicle-mile operating rates in dollars.
struct CostTable {
    double truck_congested_per_mile = 1.96;
    double truck_free_per_mile = 1.65;
    double rail_long_per_mile = 110.79;
    double rail_short_per_mile = 2380.55;
    double facility_upgrade = 900000.0;
    double rail_short_haul_threshold_miles = 500.0;  // rail legs shorter than this pay the short rate
    double truck_long_haul_threshold_miles = 250.0;  // port-truck legs longer than this may stop for a driver

    bool operator==(const CostTable&) const = default;
};

// Dollar cost of one vehicle leg. Congestion only affects trucks; rail picks
// its rate from the leg length.
double leg_cost(Mode mode, double miles, bool congested, const CostTable& table);

} // namespace portsim
