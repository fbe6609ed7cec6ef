#include "portsim/settings.hpp"

#include <charconv>

namespace portsim {

namespace {

ModelSetting drd(std::string label, double hours, SelectionPolicy selection)
{
    return {std::move(label), selection, {ReplenishPolicy::Kind::Uniform, hours}};
}

} // namespace

const std::vector<ModelSetting>& canonical_settings()
{
    static const std::vector<ModelSetting> settings{
        {"Random-WHS", SelectionPolicy::RandomAvailable, {}},
        {"N-WHS", SelectionPolicy::NearestAvailable, {}},
        drd("DRD-0-24", 24.0, SelectionPolicy::RandomAvailable),
        drd("DRD-0-72", 72.0, SelectionPolicy::RandomAvailable),
        drd("DRD-0-200", 200.0, SelectionPolicy::RandomAvailable),
        drd("DRD-0-200-N-WHS", 200.0, SelectionPolicy::NearestAvailable),
    };
    return settings;
}

std::optional<ModelSetting> parse_setting(std::string_view label)
{
    for (const auto& s : canonical_settings()) {
        if (s.label == label) {
            return s;
        }
    }
    constexpr std::string_view prefix = "DRD-0-";
    constexpr std::string_view nearest = "-N-WHS";
    if (!label.starts_with(prefix)) {
        return std::nullopt;
    }
    std::string_view rest = label.substr(prefix.size());
    auto selection = SelectionPolicy::RandomAvailable;
    if (rest.ends_with(nearest)) {
        selection = SelectionPolicy::NearestAvailable;
        rest.remove_suffix(nearest.size());
    }
    double hours = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), hours);
    if (ec != std::errc{} || ptr != rest.data() + rest.size() || !(hours > 0.0)) {
        return std::nullopt;
    }
    return drd(std::string(label), hours, selection);
}

} // namespace portsim
