#pragma once

#include <span>
#include <vector>

namespace portsim {

// Splits `total_trucks` in proportion to storage capacity with largest-remainder
// rounding. With `min_each` = 1 every warehouse keeps at least one truck.
std::vector<int> allocate_fleet(int total_trucks, std::span<const double> capacities, int min_each = 1);

} // namespace portsim
