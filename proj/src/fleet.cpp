#include "portsim/fleet.hpp"

#include "portsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace portsim {

std::vector<int> allocate_fleet(int total_trucks, std::span<const double> capacities, int min_each)
{
    if (capacities.empty()) {
        throw ValidationError("warehouses", "cannot allocate a fleet to an empty warehouse list");
    }
    const int n = static_cast<int>(capacities.size());
    if (total_trucks < 0 || total_trucks < min_each * n) {
        throw ValidationError("total_warehouse_trucks", "too few trucks for " + std::to_string(n) + " warehouses");
    }
    const double cap_sum = std::accumulate(capacities.begin(), capacities.end(), 0.0);
    if (!(cap_sum > 0.0)) {
        throw ValidationError("capacity_tons", "total warehouse capacity must be positive");
    }

    std::vector<int> counts(capacities.size());
    std::vector<double> remainder(capacities.size());
    int assigned = 0;
    for (std::size_t i = 0; i < capacities.size(); ++i) {
        const double quota = total_trucks * capacities[i] / cap_sum;
        counts[i] = static_cast<int>(std::floor(quota));
        remainder[i] = quota - counts[i];
        assigned += counts[i];
    }
    std::vector<std::size_t> order(capacities.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; assigned < total_trucks; ++k) {
        ++counts[order[k % order.size()]];
        ++assigned;
    }

    // Top up warehouses below the minimum from the largest fleets.
    for (std::size_t i = 0; i < counts.size(); ++i) {
        while (counts[i] < min_each) {
            auto donor = std::max_element(counts.begin(), counts.end());
            --*donor;
            ++counts[i];
        }
    }
    return counts;
}

} // namespace portsim
