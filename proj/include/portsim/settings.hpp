#pragma once

#include "portsim/selection.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace portsim {

// Driver replenishment: port-truck legs longer than the threshold wait
// uniform(0, max_hours) for a fresh driver before unloading.
struct ReplenishPolicy {
    enum class Kind { None, Uniform };
    Kind kind = Kind::None;
    double max_hours = 0.0;

    bool operator==(const ReplenishPolicy&) const = default;
};

struct ModelSetting {
    std::string label;
    SelectionPolicy selection = SelectionPolicy::RandomAvailable;  // train drops
    ReplenishPolicy replenish;

    bool operator==(const ModelSetting&) const = default;
};

// The six rows compared in the parameter-variation experiment, in order:
// Random-WHS, N-WHS, DRD-0-24, DRD-0-72, DRD-0-200, DRD-0-200-N-WHS.
const std::vector<ModelSetting>& canonical_settings();

// Accepts the canonical labels and the general form DRD-0-<hours>[-N-WHS].
std::optional<ModelSetting> parse_setting(std::string_view label);

} // namespace portsim
