#include "portsim/selection.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace portsim {

std::optional<NodeId> select_warehouse(SelectionPolicy policy, std::span<const WarehouseView> candidates,
                                       double needed_tons, LatLon from, RngStream& stream)
{
    std::vector<const WarehouseView*> available;
    for (const auto& c : candidates) {
        if (c.free_tons > kCapacityEpsilon && c.free_tons >= needed_tons - kCapacityEpsilon) {
            available.push_back(&c);
        }
    }
    if (available.empty()) {
        return std::nullopt;
    }
    std::sort(available.begin(), available.end(), [](auto* a, auto* b) { return a->id < b->id; });

    if (policy == SelectionPolicy::RandomAvailable) {
        return available[stream.index(available.size())]->id;
    }
    const WarehouseView* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto* c : available) {
        const double d = great_circle_miles(from, c->location);
        if (d < best_d) {  // strict: earlier (lower) id wins ties
            best_d = d;
            best = c;
        }
    }
    return best->id;
}

} // namespace portsim
