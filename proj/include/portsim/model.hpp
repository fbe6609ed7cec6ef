#pragma once

#include "portsim/metrics.hpp"
#include "portsim/scenario.hpp"
#include "portsim/settings.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace portsim {

struct RunOptions {
    // One line per processed event: fire_at, sequence, kind, details (tab separated).
    std::ostream* trace = nullptr;
    // Verify generated = queued + onboard + stored + delivered after every event.
    bool check_conservation = false;
    // Keep every cost leg and every shipment piece in the outcome.
    bool keep_records = false;
};

struct RunOutcome {
    CostLedger cost;
    DemandLedger demand;
    DwellStats dwell;
    double port_fleet_utilization = 0.0;
    double port_rail_utilization = 0.0;
    std::vector<WarehouseUtilization> warehouse_utilization;
    double generated_tons = 0.0;
    std::uint64_t events = 0;
    std::vector<Shipment> shipments;  // only with keep_records
};

// Runs the twelve-month agent model on an already-upgraded scenario.
// Random streams are derived from `seed`, so equal inputs give equal outcomes.
RunOutcome simulate(const Scenario& scenario, const ModelSetting& setting, std::uint64_t seed,
                    const RunOptions& options = {});

} // namespace portsim
