#pragma once

#include "portsim/scenario.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace portsim {

// Greedy nearest-pair merging of warehouses until `target_count` remain.
// Only warehouses with the same intermodal flag are merged. A merged node
// keeps the smallest member id, sums capacity and fleet, and sits at the
// capacity-weighted centroid of its members.
std::vector<Node> aggregate_warehouses(std::span<const Node> warehouses, std::size_t target_count);

} // namespace portsim
