#pragma once

#include "portsim/errors.hpp"
#include "portsim/sim_time.hpp"

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace portsim {

template <typename Payload>
struct EventRecord {
    SimTime fire_at;
    std::uint64_t sequence = 0;
    Payload payload;
};

// Future-event list. Pops in (fire_at, sequence) order, so events scheduled
// for the same instant fire in the order they were scheduled.
template <typename Payload>
class EventQueue {
public:
    using Record = EventRecord<Payload>;

    SimTime now() const { return now_; }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    Record schedule(SimTime at, Payload payload)
    {
        if (!std::isfinite(at.hours()) || at < now_) {
            throw SimulationError("past event: scheduled at " + std::to_string(at.hours()) +
                                  " h while clock is " + std::to_string(now_.hours()) + " h");
        }
        Record rec{at, next_sequence_++, std::move(payload)};
        heap_.push(rec);
        return rec;
    }

    // Pops the earliest event and moves the clock to it; nullopt means end of run.
    std::optional<Record> advance()
    {
        if (heap_.empty()) {
            return std::nullopt;
        }
        Record rec = heap_.top();
        heap_.pop();
        now_ = rec.fire_at;
        return rec;
    }

    const Record* peek() const { return heap_.empty() ? nullptr : &heap_.top(); }

private:
    struct Later {
        bool operator()(const Record& a, const Record& b) const
        {
            if (a.fire_at != b.fire_at) {
                return a.fire_at > b.fire_at;
            }
            return a.sequence > b.sequence;
        }
    };

    std::priority_queue<Record, std::vector<Record>, Later> heap_;
    SimTime now_{};
    std::uint64_t next_sequence_ = 0;
};

} // namespace portsim
