#pragma once

#include "portsim/scenario.hpp"
#include "portsim/sim_time.hpp"

#include <deque>
#include <optional>
#include <vector>

namespace portsim {

struct InventoryLot {
    NodeId destination{};
    double tons = 0.0;
    SimTime arrived_at;
};

struct TruckLoad {
    NodeId destination{};
    double tons = 0.0;
};

// Storage at one warehouse. Capacity promised to an inbound vehicle is held
// in `reserved` until the cargo is unloaded.
class WarehouseInventory {
public:
    WarehouseInventory(NodeId node, double capacity_tons);

    NodeId node() const { return node_; }
    double capacity() const { return capacity_; }
    double used() const { return used_; }
    double reserved() const { return reserved_; }
    double free() const;
    const std::deque<InventoryLot>& lots() const { return lots_; }

    // Holds min(tons, free) and returns the amount held.
    double reserve(double tons);
    // Stores cargo that was reserved earlier.
    void receive(std::vector<InventoryLot> cargo);

    // Fills one truck from the oldest lot's destination, oldest first.
    // Empty inventory gives nullopt.
    std::optional<TruckLoad> load_truck(double truck_capacity);

private:
    NodeId node_;
    double capacity_;
    double used_ = 0.0;
    double reserved_ = 0.0;
    std::deque<InventoryLot> lots_;
};

} // namespace portsim
