#pragma once

#include <compare>
#include <cmath>

namespace portsim {

inline constexpr double kHoursPerMonth = 730.0;
inline constexpr double kHoursPerDay = 24.0;

// Simulation clock value in hours since the start of a run.
class SimTime {
public:
    constexpr SimTime() = default;
    constexpr explicit SimTime(double hours) : hours_(hours) {}

    constexpr double hours() const { return hours_; }
    constexpr double days() const { return hours_ / kHoursPerDay; }

    static constexpr SimTime from_months(double months) { return SimTime(months * kHoursPerMonth); }

    constexpr SimTime operator+(double delta_hours) const { return SimTime(hours_ + delta_hours); }
    constexpr double operator-(SimTime other) const { return hours_ - other.hours_; }

    constexpr auto operator<=>(const SimTime&) const = default;

private:
    double hours_ = 0.0;
};

} // namespace portsim
