#include "portsim/metrics.hpp"

#include <algorithm>

namespace portsim {

double CostLedger::record_leg(Mode mode, double miles, bool congested, const CostTable& table, SimTime at)
{
    const double dollars = leg_cost(mode, miles, congested, table);
    operating_ += dollars;
    ++leg_count_;
    if (keep_legs_) {
        legs_.push_back({mode, miles, congested, dollars, at});
    }
    return dollars;
}

DestinationDemand& DemandLedger::entry(NodeId destination)
{
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [destination](const DestinationDemand& d) { return d.destination == destination; });
    if (it != entries_.end()) {
        return *it;
    }
    entries_.push_back({destination, 0.0, 0.0});
    return entries_.back();
}

void DemandLedger::add_demand(NodeId destination, double tons)
{
    entry(destination).demanded_tons += tons;
}

void DemandLedger::credit_delivery(NodeId destination, double tons)
{
    entry(destination).delivered_tons += tons;
}

double DemandLedger::demanded_tons() const
{
    double t = 0.0;
    for (const auto& e : entries_) {
        t += e.demanded_tons;
    }
    return t;
}

double DemandLedger::delivered_tons() const
{
    double t = 0.0;
    for (const auto& e : entries_) {
        t += e.delivered_tons;
    }
    return t;
}

double unmet_demand(const DemandLedger& ledger)
{
    double unmet = 0.0;
    for (const auto& e : ledger.entries()) {
        unmet += std::max(0.0, e.demanded_tons - e.delivered_tons);
    }
    return unmet;
}

DwellStats dwell_summary(std::span<const Shipment> shipments)
{
    struct Acc {
        std::size_t n = 0;
        double sum = 0.0;
        double max = 0.0;
    } rail, truck;
    DwellStats out;
    for (const auto& s : shipments) {
        if (!s.picked_up_at || !s.pickup_mode) {
            ++out.unpicked;
            continue;
        }
        const double days = (*s.picked_up_at - s.created_at) / kHoursPerDay;
        Acc& a = *s.pickup_mode == PickupMode::Rail ? rail : truck;
        a.max = a.n == 0 ? days : std::max(a.max, days);
        a.sum += days;
        ++a.n;
    }
    auto finish = [](const Acc& a) {
        ModeDwell d;
        d.count = a.n;
        if (a.n > 0) {
            d.mean_days = a.sum / static_cast<double>(a.n);
            d.max_days = a.max;
        }
        return d;
    };
    out.rail = finish(rail);
    out.truck = finish(truck);
    return out;
}

} // namespace portsim
