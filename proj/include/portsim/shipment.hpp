#pragma once

#include "portsim/scenario.hpp"
#include "portsim/sim_time.hpp"

#include <cstdint>
#include <optional>

namespace portsim {

enum class PickupMode { Truck, Rail };

std::string_view to_string(PickupMode mode);

// A tonnage lot at the port. Splitting a lot keeps its id and created_at;
// each loaded piece records when and how it left the port.
struct Shipment {
    std::uint64_t id = 0;
    double tons = 0.0;
    NodeId destination{};
    SimTime created_at;
    std::optional<SimTime> picked_up_at;
    std::optional<PickupMode> pickup_mode;
};

} // namespace portsim
