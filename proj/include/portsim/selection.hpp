#pragma once

#include "portsim/geo.hpp"
#include "portsim/rng.hpp"
#include "portsim/scenario.hpp"

#include <optional>
#include <span>

namespace portsim {

enum class SelectionPolicy { RandomAvailable, NearestAvailable };

struct WarehouseView {
    NodeId id{};
    LatLon location;
    double free_tons = 0.0;
};

// Free capacity below this counts as full.
inline constexpr double kCapacityEpsilon = 1e-9;

// A candidate is available when its free capacity covers `needed_tons` (and is
// above kCapacityEpsilon). Random picks uniformly among available candidates
// in ascending id order; nearest takes the smallest great-circle distance from
// `from`, ties to the lowest id. nullopt when nothing is available.
std::optional<NodeId> select_warehouse(SelectionPolicy policy, std::span<const WarehouseView> candidates,
                                       double needed_tons, LatLon from, RngStream& stream);

} // namespace portsim
