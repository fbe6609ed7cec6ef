#pragma once

#include "portsim/sim_time.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <string>

namespace portsim {

// Counted resource (trucks, trains) with a FIFO wait line and busy-time
// accounting in unit-hours.
class ResourcePool {
public:
    struct Grant {
        bool granted = false;
        std::uint64_t ticket = 0;
    };

    struct Release {
        int busy = 0;
        std::optional<std::uint64_t> handed_to;  // waiter granted at the same instant
    };

    ResourcePool(std::string name, int capacity);

    const std::string& name() const { return name_; }
    int capacity() const { return capacity_; }
    int busy() const { return busy_; }
    int idle() const { return capacity_ - busy_; }
    std::size_t waiting() const { return waiters_.size(); }

    // Grants a unit when one is idle, otherwise queues `requester` and returns
    // an ungranted ticket.
    Grant acquire(SimTime at, std::uint64_t requester);

    // Returns a unit. If someone waits, the unit passes to the head of the line
    // and busy stays unchanged.
    Release release(SimTime at);

    double busy_unit_hours(SimTime at) const;
    double utilization(SimTime horizon) const;

private:
    void accrue(SimTime at);

    std::string name_;
    int capacity_;
    int busy_ = 0;
    double busy_unit_hours_ = 0.0;
    SimTime last_change_{};
    std::uint64_t next_ticket_ = 1;
    std::deque<std::uint64_t> waiters_;
};

} // namespace portsim
