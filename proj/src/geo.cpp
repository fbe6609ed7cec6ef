#include "portsim/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace portsim {

bool is_valid(LatLon p)
{
    return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
           p.lon >= -180.0 && p.lon <= 180.0;
}

double great_circle_miles(LatLon a, LatLon b)
{
    constexpr double deg = std::numbers::pi / 180.0;
    const double dlat = (b.lat - a.lat) * deg;
    const double dlon = (b.lon - a.lon) * deg;
    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    double h = s1 * s1 + std::cos(a.lat * deg) * std::cos(b.lat * deg) * s2 * s2;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusMiles * std::asin(std::sqrt(h));
}

} // namespace portsim
