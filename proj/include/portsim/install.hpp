#pragma once

#include "portsim/rng.hpp"
#include "portsim/scenario.hpp"

#include <vector>

namespace portsim {

struct Installation {
    Scenario scenario;
    std::vector<NodeId> upgraded;  // ascending
    double capital_dollars = 0.0;
};

// Upgrades `p` warehouses, drawn uniformly without replacement from the
// non-intermodal ones, to intermodal. Throws ValidationError when p is out of range.
Installation install_intermodal(const Scenario& scenario, int p, RngStream& stream);

} // namespace portsim
