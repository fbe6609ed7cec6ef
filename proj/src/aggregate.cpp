#include "portsim/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace portsim {

namespace {

struct Cluster {
    Node node;
    // capacity-weighted sum of unit vectors of the members
    double x = 0.0, y = 0.0, z = 0.0;
};

constexpr double kDeg = std::numbers::pi / 180.0;

void add_point(Cluster& c, LatLon p, double weight)
{
    const double lat = p.lat * kDeg;
    const double lon = p.lon * kDeg;
    c.x += weight * std::cos(lat) * std::cos(lon);
    c.y += weight * std::cos(lat) * std::sin(lon);
    c.z += weight * std::sin(lat);
}

LatLon centroid(const Cluster& c)
{
    const double hyp = std::hypot(c.x, c.y);
    return {std::atan2(c.z, hyp) / kDeg, std::atan2(c.y, c.x) / kDeg};
}

} // namespace

std::vector<Node> aggregate_warehouses(std::span<const Node> warehouses, std::size_t target_count)
{
    if (target_count == 0 || target_count > warehouses.size()) {
        throw ValidationError("target_count", "must be between 1 and the number of warehouses (" +
                                                  std::to_string(warehouses.size()) + ")");
    }
    const bool has_rail = std::any_of(warehouses.begin(), warehouses.end(), [](const Node& n) { return n.intermodal; });
    const bool has_road = std::any_of(warehouses.begin(), warehouses.end(), [](const Node& n) { return !n.intermodal; });
    const std::size_t floor_count = static_cast<std::size_t>(has_rail) + static_cast<std::size_t>(has_road);
    if (target_count < floor_count) {
        throw ValidationError("target_count", "cannot go below " + std::to_string(floor_count) +
                                                  " without merging rail and non-rail warehouses");
    }

    std::vector<Cluster> clusters;
    clusters.reserve(warehouses.size());
    for (const auto& w : warehouses) {
        Cluster c{w};
        add_point(c, w.location, w.storage_capacity_tons);
        clusters.push_back(std::move(c));
    }

    while (clusters.size() > target_count) {
        std::size_t best_i = 0, best_j = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                if (clusters[i].node.intermodal != clusters[j].node.intermodal) {
                    continue;
                }
                const double d = great_circle_miles(clusters[i].node.location, clusters[j].node.location);
                if (d < best) {
                    best = d;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        Cluster& keep = clusters[best_i];
        Cluster& gone = clusters[best_j];
        keep.x += gone.x;
        keep.y += gone.y;
        keep.z += gone.z;
        keep.node.storage_capacity_tons += gone.node.storage_capacity_tons;
        keep.node.fleet_size += gone.node.fleet_size;
        keep.node.id = std::min(keep.node.id, gone.node.id);
        if (keep.node.state != gone.node.state) {
            keep.node.state.clear();
        }
        // Merging two co-located members must not move the node.
        if (keep.node.location != gone.node.location) {
            keep.node.location = centroid(keep);
        }
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_j));
    }

    std::vector<Node> out;
    out.reserve(clusters.size());
    for (auto& c : clusters) {
        out.push_back(std::move(c.node));
    }
    std::sort(out.begin(), out.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    return out;
}

} // namespace portsim
