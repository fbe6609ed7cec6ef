#pragma once

#include "portsim/shipment.hpp"

#include <deque>
#include <vector>

namespace portsim {

// One shipment per destination with annual_tons * share / 12 tons, created at
// the start of the month. Ids continue from `next_id`.
std::vector<Shipment> generate_monthly_arrivals(const DemandTable& demand, int month_index, int horizon_months,
                                                std::uint64_t& next_id);

// FIFO queue of shipments waiting at the port.
class PortQueue {
public:
    void push(Shipment s);
    bool empty() const { return lots_.empty(); }
    double tons() const { return tons_; }
    const std::deque<Shipment>& lots() const { return lots_; }

    // Removes `tons` after the first `skip_tons` tons of the queue, splitting
    // lots at both boundaries. Split remainders stay in place.
    std::vector<Shipment> take(double skip_tons, double tons);

private:
    std::deque<Shipment> lots_;
    double tons_ = 0.0;
};

using Load = std::vector<Shipment>;

struct DispatchPlan {
    std::vector<Load> train_loads;  // each exactly train_capacity
    std::vector<Load> truck_loads;  // full loads first, then at most one partial
};

double load_tons(const Load& load);

// Assigns queued tonnage to idle vehicles. While a train is idle and the queue
// holds at least a full train, a train takes exactly train_capacity from the
// head. Eligible tonnage then goes to idle trucks in FIFO order, full loads
// first and at most one partial load.
DispatchPlan dispatch(PortQueue& queue, int idle_trains, int idle_trucks, double train_capacity,
                      double truck_capacity, TruckEligibility eligibility = TruckEligibility::AnyRemaining);

} // namespace portsim
