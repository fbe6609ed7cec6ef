#include "portsim/resource_pool.hpp"

#include "portsim/errors.hpp"

#include <algorithm>

namespace portsim {

ResourcePool::ResourcePool(std::string name, int capacity)
    : name_(std::move(name))
    , capacity_(capacity)
{
    if (capacity_ <= 0) {
        throw ValidationError(name_, "pool capacity must be positive");
    }
}

void ResourcePool::accrue(SimTime at)
{
    if (at < last_change_) {
        throw SimulationError("pool " + name_ + ": time went backwards");
    }
    busy_unit_hours_ += static_cast<double>(busy_) * (at - last_change_);
    last_change_ = at;
}

ResourcePool::Grant ResourcePool::acquire(SimTime at, std::uint64_t requester)
{
    accrue(at);
    if (busy_ < capacity_) {
        ++busy_;
        return {true, next_ticket_++};
    }
    waiters_.push_back(requester);
    return {false, next_ticket_++};
}

ResourcePool::Release ResourcePool::release(SimTime at)
{
    if (busy_ < 1) {
        throw SimulationError("pool " + name_ + ": release of an idle pool");
    }
    accrue(at);
    if (!waiters_.empty()) {
        auto head = waiters_.front();
        waiters_.pop_front();
        return {busy_, head};
    }
    --busy_;
    return {busy_, std::nullopt};
}

double ResourcePool::busy_unit_hours(SimTime at) const
{
    if (at <= last_change_) {
        return busy_unit_hours_;
    }
    return busy_unit_hours_ + static_cast<double>(busy_) * (at - last_change_);
}

double ResourcePool::utilization(SimTime horizon) const
{
    if (!(horizon.hours() > 0.0)) {
        throw std::invalid_argument("utilization: horizon must be positive");
    }
    const double u = busy_unit_hours(horizon) / (static_cast<double>(capacity_) * horizon.hours());
    return std::clamp(u, 0.0, 1.0);
}

} // namespace portsim
