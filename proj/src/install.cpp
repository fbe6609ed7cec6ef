#include "portsim/install.hpp"

#include <algorithm>

namespace portsim {

Installation install_intermodal(const Scenario& scenario, int p, RngStream& stream)
{
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < scenario.nodes.size(); ++i) {
        const Node& n = scenario.nodes[i];
        if (n.kind == NodeKind::Warehouse && !n.intermodal) {
            candidates.push_back(i);
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return scenario.nodes[a].id < scenario.nodes[b].id; });
    if (p < 0 || static_cast<std::size_t>(p) > candidates.size()) {
        throw ValidationError("p", "must be between 0 and " + std::to_string(candidates.size()) +
                                       " (warehouses without intermodal facilities)");
    }

    Installation out{scenario, {}, 0.0};
    // Partial Fisher-Yates: the first p slots become a uniform sample.
    for (int k = 0; k < p; ++k) {
        const std::size_t j = static_cast<std::size_t>(k) + stream.index(candidates.size() - static_cast<std::size_t>(k));
        std::swap(candidates[static_cast<std::size_t>(k)], candidates[j]);
        Node& n = out.scenario.nodes[candidates[static_cast<std::size_t>(k)]];
        n.intermodal = true;
        out.upgraded.push_back(n.id);
    }
    std::sort(out.upgraded.begin(), out.upgraded.end());
    out.capital_dollars = p * scenario.cost_table.facility_upgrade;
    return out;
}

} // namespace portsim
