#include "portsim/warehouse.hpp"

#include "portsim/errors.hpp"
#include "portsim/selection.hpp"

#include <algorithm>

namespace portsim {

WarehouseInventory::WarehouseInventory(NodeId node, double capacity_tons)
    : node_(node)
    , capacity_(capacity_tons)
{
}

double WarehouseInventory::free() const
{
    return std::max(0.0, capacity_ - used_ - reserved_);
}

double WarehouseInventory::reserve(double tons)
{
    const double held = std::min(tons, free());
    reserved_ += held;
    return held;
}

void WarehouseInventory::receive(std::vector<InventoryLot> cargo)
{
    double total = 0.0;
    for (auto& lot : cargo) {
        total += lot.tons;
        lots_.push_back(lot);
    }
    if (total > reserved_ + 1e-6) {
        throw SimulationError("warehouse " + std::to_string(to_int(node_)) + ": unreserved delivery");
    }
    reserved_ = std::max(0.0, reserved_ - total);
    used_ += total;
    if (used_ > capacity_ + 1e-6) {
        throw SimulationError("warehouse " + std::to_string(to_int(node_)) + ": inventory above capacity");
    }
}

std::optional<TruckLoad> WarehouseInventory::load_truck(double truck_capacity)
{
    if (lots_.empty() || used_ <= kCapacityEpsilon) {
        return std::nullopt;
    }
    TruckLoad load{lots_.front().destination, 0.0};
    for (auto it = lots_.begin(); it != lots_.end() && load.tons < truck_capacity;) {
        if (it->destination != load.destination) {
            ++it;
            continue;
        }
        const double take = std::min(it->tons, truck_capacity - load.tons);
        load.tons += take;
        it->tons -= take;
        if (it->tons <= 1e-9) {
            load.tons += it->tons;
            it = lots_.erase(it);
        } else {
            ++it;
        }
    }
    used_ = std::max(0.0, used_ - load.tons);
    if (lots_.empty()) {
        used_ = 0.0;
    }
    return load;
}

} // namespace portsim
