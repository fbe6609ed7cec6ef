#pragma once

namespace portsim {

inline constexpr double kEarthRadiusMiles = 3958.8;

struct LatLon {
    double lat = 0.0;  // degrees
    double lon = 0.0;  // degrees

    bool operator==(const LatLon&) const = default;
};

bool is_valid(LatLon p);

// Haversine distance on a sphere of radius kEarthRadiusMiles.
double great_circle_miles(LatLon a, LatLon b);

} // namespace portsim
