#include "portsim/plan.hpp"

#include "portsim/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace portsim {

namespace {

using nlohmann::json;

int integer_field(const json& doc, const char* key, int fallback, std::vector<ValidationIssue>& issues)
{
    auto it = doc.find(key);
    if (it == doc.end()) {
        return fallback;
    }
    if (!it->is_number_integer()) {
        issues.push_back({key, "must be an integer"});
        return fallback;
    }
    return it->get<int>();
}

std::vector<ModelSetting> settings_from_json(const json& value, std::vector<ValidationIssue>& issues)
{
    if (value.is_string()) {
        try {
            return parse_setting_list(value.get<std::string>());
        } catch (const ValidationError& e) {
            issues.insert(issues.end(), e.issues().begin(), e.issues().end());
            return {};
        }
    }
    if (!value.is_array()) {
        issues.push_back({"settings", "must be \"all\" or a list of labels"});
        return {};
    }
    std::vector<ModelSetting> out;
    for (const auto& item : value) {
        if (!item.is_string()) {
            issues.push_back({"settings", "labels must be strings"});
            continue;
        }
        auto s = parse_setting(item.get<std::string>());
        if (!s) {
            issues.push_back({"settings", "unknown setting '" + item.get<std::string>() + "'"});
            continue;
        }
        out.push_back(*s);
    }
    return out;
}

} // namespace

std::vector<ModelSetting> parse_setting_list(std::string_view text)
{
    if (text == "all") {
        return canonical_settings();
    }
    std::vector<ModelSetting> out;
    std::vector<ValidationIssue> issues;
    while (true) {
        const auto comma = text.find(',');
        const auto label = text.substr(0, comma);
        if (auto s = parse_setting(label)) {
            out.push_back(*s);
        } else {
            issues.push_back({"settings", "unknown setting '" + std::string(label) + "'"});
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }
    return out;
}

PlanFile load_plan(std::string_view document, const std::filesystem::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ValidationError("plan", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("plan", "must be a JSON object");
    }

    std::vector<ValidationIssue> issues;
    const std::string kind = doc.value("kind", std::string("sweep"));
    const bool sweep = kind == "sweep";
    if (!sweep && kind != "optimize") {
        issues.push_back({"kind", "must be \"sweep\" or \"optimize\""});
    }
    const auto allowed = sweep ? std::vector<std::string>{"kind", "scenario", "settings", "iterations", "base_seed",
                                                          "run_budget", "p"}
                               : std::vector<std::string>{"kind", "scenario", "setting", "p_range", "replications",
                                                          "base_seed", "objective"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            issues.push_back({it.key(), "unknown field"});
        }
    }

    std::uint64_t base_seed = 1;
    if (auto it = doc.find("base_seed"); it != doc.end()) {
        if (it->is_number_unsigned()) {
            base_seed = it->get<std::uint64_t>();
        } else {
            issues.push_back({"base_seed", "must be a non-negative integer"});
        }
    }

    std::optional<Scenario> scenario;
    auto sc = doc.find("scenario");
    if (sc == doc.end() || !sc->is_string()) {
        issues.push_back({"scenario", "path to a scenario file is required"});
    } else if (issues.empty()) {
        std::filesystem::path path = sc->get<std::string>();
        if (path.is_relative()) {
            path = base_dir / path;
        }
        scenario = load_scenario_file(path);
    }

    if (sweep) {
        ExperimentPlan plan;
        plan.base_seed = base_seed;
        plan.iterations = integer_field(doc, "iterations", plan.iterations, issues);
        plan.p = integer_field(doc, "p", plan.p, issues);
        if (doc.contains("run_budget")) {
            plan.run_budget = integer_field(doc, "run_budget", 0, issues);
        }
        plan.settings = doc.contains("settings") ? settings_from_json(doc["settings"], issues) : canonical_settings();
        if (plan.iterations < 1) {
            issues.push_back({"iterations", "must be at least 1"});
        }
        if (!issues.empty()) {
            throw ValidationError(std::move(issues));
        }
        plan.scenario = std::move(*scenario);
        return plan;
    }

    OptimizationPlan plan;
    plan.setting = default_optimization_setting();
    plan.base_seed = base_seed;
    plan.replications = integer_field(doc, "replications", plan.replications, issues);
    if (auto it = doc.find("setting"); it != doc.end()) {
        std::optional<ModelSetting> s;
        if (it->is_string()) {
            s = parse_setting(it->get<std::string>());
        }
        if (s) {
            plan.setting = *s;
        } else {
            issues.push_back({"setting", "unknown setting"});
        }
    }
    if (auto it = doc.find("p_range"); it != doc.end()) {
        if (it->is_array() && it->size() == 2 && (*it)[0].is_number_integer() && (*it)[1].is_number_integer()) {
            plan.p_min = (*it)[0].get<int>();
            plan.p_max = (*it)[1].get<int>();
        } else {
            issues.push_back({"p_range", "must be [min, max]"});
        }
    }
    if (auto it = doc.find("objective"); it != doc.end()) {
        const std::string obj = it->is_string() ? it->get<std::string>() : "";
        if (obj == "operating") {
            plan.objective = Objective::Operating;
        } else if (obj == "total") {
            plan.objective = Objective::OperatingPlusCapital;
        } else {
            issues.push_back({"objective", "must be \"operating\" or \"total\""});
        }
    }
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }
    plan.scenario = std::move(*scenario);
    return plan;
}

PlanFile load_plan_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return load_plan(text.str(), path.parent_path());
}

} // namespace portsim
