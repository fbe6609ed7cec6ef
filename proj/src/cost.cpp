#include "portsim/cost.hpp"

#include <cmath>
#include <stdexcept>

namespace portsim {

std::string_view to_string(Mode mode)
{
    return mode == Mode::Truck ? "truck" : "rail";
}

double leg_cost(Mode mode, double miles, bool congested, const CostTable& table)
{
    if (!(miles >= 0.0) || !std::isfinite(miles)) {
        throw std::invalid_argument("leg_cost: miles must be a non-negative number");
    }
    if (mode == Mode::Truck) {
        return miles * (congested ? table.truck_congested_per_mile : table.truck_free_per_mile);
    }
    return miles * (miles >= table.rail_short_haul_threshold_miles ? table.rail_long_per_mile
                                                                   : table.rail_short_per_mile);
}

} // namespace portsim
