#include "portsim/port.hpp"

#include "portsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace portsim {

namespace {

// Tonnage below this is treated as zero when splitting lots.
constexpr double kTonEpsilon = 1e-9;

} // namespace

std::string_view to_string(PickupMode mode)
{
    return mode == PickupMode::Truck ? "truck" : "rail";
}

std::vector<Shipment> generate_monthly_arrivals(const DemandTable& demand, int month_index, int horizon_months,
                                                std::uint64_t& next_id)
{
    if (month_index < 0 || month_index >= horizon_months) {
        throw SimulationError("month index " + std::to_string(month_index) + " outside the horizon");
    }
    std::vector<Shipment> out;
    const SimTime created = SimTime::from_months(month_index);
    for (const auto& share : demand.shares) {
        const double tons = demand.annual_tons * share.fraction / 12.0;
        if (tons <= 0.0) {
            continue;
        }
        out.push_back(Shipment{next_id++, tons, share.destination, created, std::nullopt, std::nullopt});
    }
    return out;
}

void PortQueue::push(Shipment s)
{
    tons_ += s.tons;
    lots_.push_back(std::move(s));
}

std::vector<Shipment> PortQueue::take(double skip_tons, double tons)
{
    std::vector<Shipment> out;
    if (tons <= 0.0) {
        return out;
    }
    std::deque<Shipment> kept;
    double offset = 0.0;
    double need = tons;
    while (!lots_.empty()) {
        Shipment lot = std::move(lots_.front());
        lots_.pop_front();
        if (need <= kTonEpsilon) {
            kept.push_back(std::move(lot));
            continue;
        }
        // Part of this lot that lies before the skip boundary stays queued.
        const double before = std::clamp(skip_tons - offset, 0.0, lot.tons);
        offset += lot.tons;
        if (before >= lot.tons - kTonEpsilon) {
            kept.push_back(std::move(lot));
            continue;
        }
        double avail = lot.tons - before;
        double piece = std::min(avail, need);
        if (avail - piece <= kTonEpsilon) {
            piece = avail;  // absorb float dust instead of leaving a sliver
        }
        Shipment taken = lot;
        taken.tons = piece;
        out.push_back(taken);
        need -= piece;
        const double left = lot.tons - piece;
        if (left > kTonEpsilon) {
            lot.tons = left;
            kept.push_back(std::move(lot));
        }
    }
    lots_ = std::move(kept);
    double sum = 0.0;
    for (const auto& s : lots_) {
        sum += s.tons;
    }
    tons_ = sum;
    return out;
}

double load_tons(const Load& load)
{
    double t = 0.0;
    for (const auto& s : load) {
        t += s.tons;
    }
    return t;
}

DispatchPlan dispatch(PortQueue& queue, int idle_trains, int idle_trucks, double train_capacity,
                      double truck_capacity, TruckEligibility eligibility)
{
    constexpr double kFullTrainSlack = 1e-6;
    DispatchPlan plan;
    while (idle_trains > 0 && queue.tons() >= train_capacity - kFullTrainSlack) {
        plan.train_loads.push_back(queue.take(0.0, std::min(train_capacity, queue.tons())));
        --idle_trains;
    }
    const double q = queue.tons();
    const double reserved = eligibility == TruckEligibility::TailOnly
                                ? std::floor((q + kFullTrainSlack) / train_capacity) * train_capacity
                                : 0.0;
    double eligible = std::max(0.0, q - reserved);
    while (idle_trucks > 0 && eligible > kTonEpsilon) {
        const double t = std::min(truck_capacity, eligible);
        plan.truck_loads.push_back(queue.take(reserved, t));
        eligible -= t;
        --idle_trucks;
    }
    return plan;
}

} // namespace portsim
