#pragma once

#include "portsim/cost.hpp"
#include "portsim/scenario.hpp"
#include "portsim/settings.hpp"
#include "portsim/shipment.hpp"
#include "portsim/sim_time.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace portsim {

struct LegRecord {
    Mode mode = Mode::Truck;
    double miles = 0.0;
    bool congested = false;
    double dollars = 0.0;
    SimTime at;
};

// Operating cost is the sum of leg costs; capital (facility upgrades) is kept
// apart. Individual legs are retained only when asked for, since sweeps
// produce hundreds of thousands of them.
class CostLedger {
public:
    explicit CostLedger(bool keep_legs = false) : keep_legs_(keep_legs) {}

    // Prices the leg with leg_cost, adds it to the operating total and returns
    // the dollars charged.
    double record_leg(Mode mode, double miles, bool congested, const CostTable& table, SimTime at);

    double operating_dollars() const { return operating_; }
    double capital_dollars() const { return capital_; }
    void set_capital_dollars(double dollars) { capital_ = dollars; }

    std::size_t leg_count() const { return leg_count_; }
    const std::vector<LegRecord>& legs() const { return legs_; }

private:
    bool keep_legs_;
    double operating_ = 0.0;
    double capital_ = 0.0;
    std::size_t leg_count_ = 0;
    std::vector<LegRecord> legs_;
};

struct DestinationDemand {
    NodeId destination{};
    double demanded_tons = 0.0;
    double delivered_tons = 0.0;
};

class DemandLedger {
public:
    void add_demand(NodeId destination, double tons);
    void credit_delivery(NodeId destination, double tons);

    const std::vector<DestinationDemand>& entries() const { return entries_; }
    double demanded_tons() const;
    double delivered_tons() const;

private:
    DestinationDemand& entry(NodeId destination);

    std::vector<DestinationDemand> entries_;
};

// Sum over destinations of max(0, demanded - delivered). Over-delivery to one
// destination does not offset another.
double unmet_demand(const DemandLedger& ledger);

struct ModeDwell {
    std::size_t count = 0;
    std::optional<double> mean_days;  // empty when nothing was picked up by this mode
    std::optional<double> max_days;
};

struct DwellStats {
    ModeDwell rail;
    ModeDwell truck;
    std::size_t unpicked = 0;
};

// Port dwell (picked_up_at - created_at) per pickup mode, in days. Pieces that
// never left the port are only counted in `unpicked`.
DwellStats dwell_summary(std::span<const Shipment> shipments);

struct WarehouseUtilization {
    NodeId warehouse{};
    double utilization = 0.0;
};

struct RunResult {
    ModelSetting setting;
    int p = 0;
    std::uint64_t seed = 0;
    CostLedger cost;
    DemandLedger demand;
    double port_fleet_utilization = 0.0;
    double port_rail_utilization = 0.0;
    std::vector<WarehouseUtilization> warehouse_utilization;
    DwellStats dwell;
    std::vector<NodeId> upgraded;
};

} // namespace portsim
