#include "portsim/scenario.hpp"

#include "portsim/fleet.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace portsim {

using nlohmann::json;

std::string_view to_string(NodeKind kind)
{
    switch (kind) {
    case NodeKind::Port:
        return "port";
    case NodeKind::Warehouse:
        return "warehouse";
    case NodeKind::Destination:
        return "destination";
    }
    return "?";
}

const Node* Scenario::find(NodeId id) const
{
    auto it = std::find_if(nodes.begin(), nodes.end(), [id](const Node& n) { return n.id == id; });
    return it == nodes.end() ? nullptr : &*it;
}

const Node& Scenario::node(NodeId id) const
{
    if (const Node* n = find(id)) {
        return *n;
    }
    throw Error("unknown node " + std::to_string(to_int(id)));
}

const Node& Scenario::port() const
{
    for (const auto& n : nodes) {
        if (n.kind == NodeKind::Port) {
            return n;
        }
    }
    throw Error("scenario has no port");
}

std::vector<const Node*> Scenario::warehouses() const
{
    std::vector<const Node*> out;
    for (const auto& n : nodes) {
        if (n.kind == NodeKind::Warehouse) {
            out.push_back(&n);
        }
    }
    return out;
}

std::vector<const Node*> Scenario::destinations() const
{
    std::vector<const Node*> out;
    for (const auto& n : nodes) {
        if (n.kind == NodeKind::Destination) {
            out.push_back(&n);
        }
    }
    return out;
}

std::size_t Scenario::non_intermodal_count() const
{
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) {
        return n.kind == NodeKind::Warehouse && !n.intermodal;
    }));
}

bool Scenario::is_congested(NodeId a, NodeId b) const
{
    if (congested_links) {
        for (const auto& [x, y] : *congested_links) {
            if ((x == a && y == b) || (x == b && y == a)) {
                return true;
            }
        }
        return false;
    }
    return node(a).state == "CA" && node(b).state == "CA";
}

double Scenario::horizon_hours() const
{
    return horizon_months * 730.0;
}

namespace {

class Reader {
public:
    std::vector<ValidationIssue> issues;

    void fail(std::string field, std::string message) { issues.push_back({std::move(field), std::move(message)}); }

    void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed)
    {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
                fail(join(path, it.key()), "unknown field");
            }
        }
    }

    const json* object(const json& parent, const std::string& path, std::string_view key)
    {
        auto it = parent.find(key);
        if (it == parent.end()) {
            return nullptr;
        }
        if (!it->is_object()) {
            fail(join(path, key), "must be an object");
            return nullptr;
        }
        return &*it;
    }

    double number(const json& obj, const std::string& path, std::string_view key, double fallback)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return fallback;
        }
        if (!it->is_number()) {
            fail(join(path, key), "must be a number");
            return fallback;
        }
        return it->get<double>();
    }

    std::optional<double> required_number(const json& obj, const std::string& path, std::string_view key)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            fail(join(path, key), "is required");
            return std::nullopt;
        }
        if (!it->is_number()) {
            fail(join(path, key), "must be a number");
            return std::nullopt;
        }
        return it->get<double>();
    }

    int integer(const json& obj, const std::string& path, std::string_view key, int fallback)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return fallback;
        }
        if (!it->is_number_integer()) {
            fail(join(path, key), "must be an integer");
            return fallback;
        }
        return it->get<int>();
    }

    std::string text(const json& obj, const std::string& path, std::string_view key)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return {};
        }
        if (!it->is_string()) {
            fail(join(path, key), "must be a string");
            return {};
        }
        return it->get<std::string>();
    }

    bool boolean(const json& obj, const std::string& path, std::string_view key, bool fallback)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return fallback;
        }
        if (!it->is_boolean()) {
            fail(join(path, key), "must be true or false");
            return fallback;
        }
        return it->get<bool>();
    }

    std::optional<NodeId> node_ref(const json& value, const std::string& path)
    {
        if (!value.is_number_integer() || value.get<long long>() < 0 ||
            value.get<long long>() > static_cast<long long>(UINT32_MAX)) {
            fail(path, "must be a non-negative integer node id");
            return std::nullopt;
        }
        return NodeId{value.get<std::uint32_t>()};
    }

    static std::string join(const std::string& path, std::string_view key)
    {
        return path.empty() ? std::string(key) : path + "." + std::string(key);
    }
};

void read_nodes(Reader& r, const json& doc, Scenario& s, std::vector<bool>& fleet_given)
{
    auto it = doc.find("nodes");
    if (it == doc.end() || !it->is_array()) {
        r.fail("nodes", "must be a list of node records");
        return;
    }
    std::set<std::uint32_t> seen;
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& rec = (*it)[i];
        const std::string path = "nodes[" + std::to_string(i) + "]";
        if (!rec.is_object()) {
            r.fail(path, "must be an object");
            continue;
        }
        r.check_keys(rec, path, {"id", "kind", "lat", "lon", "intermodal", "capacity_tons", "fleet", "name", "state"});
        Node n;
        auto id_it = rec.find("id");
        if (id_it == rec.end()) {
            r.fail(path + ".id", "is required");
        } else if (auto id = r.node_ref(*id_it, path + ".id")) {
            n.id = *id;
            if (!seen.insert(to_int(*id)).second) {
                r.fail(path + ".id", "duplicate node id " + std::to_string(to_int(*id)));
            }
        }
        const std::string kind = r.text(rec, path, "kind");
        if (kind == "port") {
            n.kind = NodeKind::Port;
        } else if (kind == "warehouse") {
            n.kind = NodeKind::Warehouse;
        } else if (kind == "destination") {
            n.kind = NodeKind::Destination;
        } else {
            r.fail(path + ".kind", "must be port, warehouse or destination");
            continue;
        }
        auto lat = r.required_number(rec, path, "lat");
        auto lon = r.required_number(rec, path, "lon");
        n.location = {lat.value_or(0.0), lon.value_or(0.0)};
        if (lat && (*lat < -90.0 || *lat > 90.0)) {
            r.fail(path + ".lat", "must be within [-90, 90]");
        }
        if (lon && (*lon < -180.0 || *lon > 180.0)) {
            r.fail(path + ".lon", "must be within [-180, 180]");
        }
        n.name = r.text(rec, path, "name");
        n.state = r.text(rec, path, "state");

        bool has_fleet = rec.contains("fleet");
        switch (n.kind) {
        case NodeKind::Port:
            n.intermodal = true;
            if (rec.contains("capacity_tons") || has_fleet) {
                r.fail(path, "port fleet is set under port{}, and the port has no storage capacity");
            }
            break;
        case NodeKind::Warehouse: {
            n.intermodal = r.boolean(rec, path, "intermodal", false);
            auto cap = r.required_number(rec, path, "capacity_tons");
            if (cap) {
                if (!(*cap > 0.0) || !std::isfinite(*cap)) {
                    r.fail(path + ".capacity_tons", "must be positive");
                }
                n.storage_capacity_tons = *cap;
            }
            if (has_fleet) {
                n.fleet_size = r.integer(rec, path, "fleet", 0);
                if (n.fleet_size < 1) {
                    r.fail(path + ".fleet", "must be positive");
                }
            }
            fleet_given.push_back(has_fleet);
            break;
        }
        case NodeKind::Destination:
            if (rec.contains("capacity_tons") || has_fleet || rec.contains("intermodal")) {
                r.fail(path, "destinations have no storage, fleet or intermodal flag");
            }
            break;
        }
        s.nodes.push_back(std::move(n));
    }
}

Scenario read_scenario(Reader& r, const json& doc)
{
    Scenario s;
    if (!doc.is_object()) {
        r.fail("", "scenario document must be an object");
        return s;
    }
    r.check_keys(doc, "", {"name", "description", "nodes", "cost_table", "vehicle_spec", "demand", "port",
                           "total_warehouse_trucks", "horizon_months", "congested_links"});
    s.name = r.text(doc, "", "name");
    s.description = r.text(doc, "", "description");

    std::vector<bool> fleet_given;
    read_nodes(r, doc, s, fleet_given);

    const auto port_count = std::count_if(s.nodes.begin(), s.nodes.end(),
                                          [](const Node& n) { return n.kind == NodeKind::Port; });
    const auto wh_count = std::count_if(s.nodes.begin(), s.nodes.end(),
                                        [](const Node& n) { return n.kind == NodeKind::Warehouse; });
    const auto dest_count = std::count_if(s.nodes.begin(), s.nodes.end(),
                                          [](const Node& n) { return n.kind == NodeKind::Destination; });
    if (port_count != 1) {
        r.fail("nodes", "exactly one port required, found " + std::to_string(port_count));
    }
    if (wh_count < 1) {
        r.fail("nodes", "at least one warehouse required");
    }
    if (dest_count < 1) {
        r.fail("nodes", "at least one destination required");
    }

    if (const json* ct = r.object(doc, "", "cost_table")) {
        r.check_keys(*ct, "cost_table", {"truck_congested_per_mile", "truck_free_per_mile", "rail_long_per_mile",
                                         "rail_short_per_mile", "facility_upgrade", "rail_short_haul_threshold_miles",
                                         "truck_long_haul_threshold_miles"});
        auto& c = s.cost_table;
        c.truck_congested_per_mile = r.number(*ct, "cost_table", "truck_congested_per_mile", c.truck_congested_per_mile);
        c.truck_free_per_mile = r.number(*ct, "cost_table", "truck_free_per_mile", c.truck_free_per_mile);
        c.rail_long_per_mile = r.number(*ct, "cost_table", "rail_long_per_mile", c.rail_long_per_mile);
        c.rail_short_per_mile = r.number(*ct, "cost_table", "rail_short_per_mile", c.rail_short_per_mile);
        c.facility_upgrade = r.number(*ct, "cost_table", "facility_upgrade", c.facility_upgrade);
        c.rail_short_haul_threshold_miles =
            r.number(*ct, "cost_table", "rail_short_haul_threshold_miles", c.rail_short_haul_threshold_miles);
        c.truck_long_haul_threshold_miles =
            r.number(*ct, "cost_table", "truck_long_haul_threshold_miles", c.truck_long_haul_threshold_miles);
        for (auto [key, v] : {std::pair{"truck_congested_per_mile", c.truck_congested_per_mile},
                              {"truck_free_per_mile", c.truck_free_per_mile},
                              {"rail_long_per_mile", c.rail_long_per_mile},
                              {"rail_short_per_mile", c.rail_short_per_mile},
                              {"facility_upgrade", c.facility_upgrade}}) {
            if (!(v >= 0.0)) {
                r.fail(std::string("cost_table.") + key, "must be non-negative");
            }
        }
        for (auto [key, v] : {std::pair{"rail_short_haul_threshold_miles", c.rail_short_haul_threshold_miles},
                              {"truck_long_haul_threshold_miles", c.truck_long_haul_threshold_miles}}) {
            if (!(v > 0.0)) {
                r.fail(std::string("cost_table.") + key, "must be positive");
            }
        }
    }

    if (const json* vs = r.object(doc, "", "vehicle_spec")) {
        r.check_keys(*vs, "vehicle_spec", {"truck_capacity_tons", "train_capacity_tons", "truck_speed_mph",
                                           "train_speed_mph", "truck_service_hours", "train_service_hours"});
        auto& v = s.vehicle_spec;
        v.truck_capacity_tons = r.number(*vs, "vehicle_spec", "truck_capacity_tons", v.truck_capacity_tons);
        v.train_capacity_tons = r.number(*vs, "vehicle_spec", "train_capacity_tons", v.train_capacity_tons);
        v.truck_speed_mph = r.number(*vs, "vehicle_spec", "truck_speed_mph", v.truck_speed_mph);
        v.train_speed_mph = r.number(*vs, "vehicle_spec", "train_speed_mph", v.train_speed_mph);
        v.truck_service_hours = r.number(*vs, "vehicle_spec", "truck_service_hours", v.truck_service_hours);
        v.train_service_hours = r.number(*vs, "vehicle_spec", "train_service_hours", v.train_service_hours);
        for (auto [key, val] : {std::pair{"truck_capacity_tons", v.truck_capacity_tons},
                                {"train_capacity_tons", v.train_capacity_tons},
                                {"truck_speed_mph", v.truck_speed_mph},
                                {"train_speed_mph", v.train_speed_mph}}) {
            if (!(val > 0.0)) {
                r.fail(std::string("vehicle_spec.") + key, "must be positive");
            }
        }
        for (auto [key, val] : {std::pair{"truck_service_hours", v.truck_service_hours},
                                {"train_service_hours", v.train_service_hours}}) {
            if (!(val >= 0.0)) {
                r.fail(std::string("vehicle_spec.") + key, "must be non-negative");
            }
        }
    }

    if (const json* dm = r.object(doc, "", "demand")) {
        r.check_keys(*dm, "demand", {"annual_tons", "shares"});
        s.demand.annual_tons = r.number(*dm, "demand", "annual_tons", 0.0);
        if (!(s.demand.annual_tons >= 0.0)) {
            r.fail("demand.annual_tons", "must be non-negative");
        }
        auto sh = dm->find("shares");
        if (sh == dm->end() || !sh->is_array() || sh->empty()) {
            r.fail("demand.shares", "must be a non-empty list");
        } else {
            double sum = 0.0;
            std::set<std::uint32_t> seen;
            for (std::size_t i = 0; i < sh->size(); ++i) {
                const std::string path = "demand.shares[" + std::to_string(i) + "]";
                const json& rec = (*sh)[i];
                if (!rec.is_object()) {
                    r.fail(path, "must be an object");
                    continue;
                }
                r.check_keys(rec, path, {"destination", "share"});
                auto d = rec.find("destination");
                std::optional<NodeId> id;
                if (d == rec.end()) {
                    r.fail(path + ".destination", "is required");
                } else {
                    id = r.node_ref(*d, path + ".destination");
                }
                auto f = r.required_number(rec, path, "share");
                if (id) {
                    const Node* n = s.find(*id);
                    if (n == nullptr) {
                        r.fail(path + ".destination", "unknown node " + std::to_string(to_int(*id)));
                    } else if (n->kind != NodeKind::Destination) {
                        r.fail(path + ".destination", "node " + std::to_string(to_int(*id)) + " is not a destination");
                    }
                    if (!seen.insert(to_int(*id)).second) {
                        r.fail(path + ".destination", "duplicate destination");
                    }
                }
                if (f && !(*f > 0.0)) {
                    r.fail(path + ".share", "must be positive");
                }
                if (id && f) {
                    s.demand.shares.push_back({*id, *f});
                    sum += *f;
                }
            }
            if (!(sum > 0.0) || !std::isfinite(sum)) {
                r.fail("demand.shares", "shares must sum to a positive value");
            } else if (std::abs(sum - 1.0) > 1e-12) {
                for (auto& share : s.demand.shares) {
                    share.fraction /= sum;
                }
            }
        }
    } else {
        r.fail("demand", "is required");
    }

    if (const json* port = r.object(doc, "", "port")) {
        r.check_keys(*port, "port", {"trucks", "trains", "truck_loads"});
        s.port_trucks = r.integer(*port, "port", "trucks", s.port_trucks);
        s.port_trains = r.integer(*port, "port", "trains", s.port_trains);
        if (auto it = port->find("truck_loads"); it != port->end()) {
            if (*it == "any") {
                s.truck_eligibility = TruckEligibility::AnyRemaining;
            } else if (*it == "tail") {
                s.truck_eligibility = TruckEligibility::TailOnly;
            } else {
                r.fail("port.truck_loads", "must be \"any\" or \"tail\"");
            }
        }
    }
    if (s.port_trucks <= 0) {
        r.fail("port.trucks", "must be positive");
    }
    if (s.port_trains <= 0) {
        r.fail("port.trains", "must be positive");
    }
    const bool total_given = doc.contains("total_warehouse_trucks");
    s.total_warehouse_trucks = r.integer(doc, "", "total_warehouse_trucks", s.total_warehouse_trucks);
    if (s.total_warehouse_trucks <= 0) {
        r.fail("total_warehouse_trucks", "must be positive");
    }
    s.horizon_months = r.integer(doc, "", "horizon_months", s.horizon_months);
    if (s.horizon_months <= 0) {
        r.fail("horizon_months", "must be positive");
    }

    if (auto cl = doc.find("congested_links"); cl != doc.end()) {
        if (!cl->is_array()) {
            r.fail("congested_links", "must be a list of [origin, destination] pairs");
        } else {
            std::vector<NodePair> links;
            for (std::size_t i = 0; i < cl->size(); ++i) {
                const std::string path = "congested_links[" + std::to_string(i) + "]";
                const json& pair = (*cl)[i];
                if (!pair.is_array() || pair.size() != 2) {
                    r.fail(path, "must be a pair [origin, destination]");
                    continue;
                }
                auto a = r.node_ref(pair[0], path);
                auto b = r.node_ref(pair[1], path);
                if (!a || !b) {
                    continue;
                }
                for (NodeId id : {*a, *b}) {
                    if (s.find(id) == nullptr) {
                        r.fail(path, "unknown node " + std::to_string(to_int(id)));
                    }
                }
                links.emplace_back(*a, *b);
            }
            s.congested_links = std::move(links);
        }
    }

    // Warehouse fleets: all given, or none given and split from the total.
    const auto given = std::count(fleet_given.begin(), fleet_given.end(), true);
    std::vector<Node*> whs;
    for (auto& n : s.nodes) {
        if (n.kind == NodeKind::Warehouse) {
            whs.push_back(&n);
        }
    }
    if (given > 0 && given != static_cast<long>(fleet_given.size())) {
        r.fail("nodes", "fleet must be given for every warehouse or for none");
    } else if (given > 0) {
        int sum = 0;
        for (const Node* w : whs) {
            sum += w->fleet_size;
        }
        if (total_given && sum != s.total_warehouse_trucks) {
            r.fail("total_warehouse_trucks", "does not match the sum of warehouse fleets (" + std::to_string(sum) + ")");
        }
        s.total_warehouse_trucks = sum;
    } else if (!whs.empty() && r.issues.empty()) {
        if (s.total_warehouse_trucks < static_cast<int>(whs.size())) {
            r.fail("total_warehouse_trucks", "must be at least the number of warehouses");
        } else {
            std::vector<double> caps;
            for (const Node* w : whs) {
                caps.push_back(w->storage_capacity_tons);
            }
            auto counts = allocate_fleet(s.total_warehouse_trucks, caps);
            for (std::size_t i = 0; i < whs.size(); ++i) {
                whs[i]->fleet_size = counts[i];
            }
        }
    }
    return s;
}

std::string kind_name(NodeKind k)
{
    return std::string(to_string(k));
}

std::vector<ValidationIssue> parse_into(std::string_view document, Scenario& out)
{
    Reader r;
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        r.fail("document", std::string("not valid JSON: ") + e.what());
        return r.issues;
    }
    out = read_scenario(r, doc);
    return r.issues;
}

} // namespace

std::vector<ValidationIssue> validate_scenario_document(std::string_view document)
{
    Scenario s;
    return parse_into(document, s);
}

Scenario load_scenario(std::string_view document)
{
    Scenario s;
    auto issues = parse_into(document, s);
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s)
{
    json doc;
    if (!s.name.empty()) {
        doc["name"] = s.name;
    }
    if (!s.description.empty()) {
        doc["description"] = s.description;
    }
    json nodes = json::array();
    for (const auto& n : s.nodes) {
        json rec{{"id", to_int(n.id)}, {"kind", kind_name(n.kind)}, {"lat", n.location.lat}, {"lon", n.location.lon}};
        if (!n.name.empty()) {
            rec["name"] = n.name;
        }
        if (!n.state.empty()) {
            rec["state"] = n.state;
        }
        if (n.kind == NodeKind::Warehouse) {
            rec["intermodal"] = n.intermodal;
            rec["capacity_tons"] = n.storage_capacity_tons;
            rec["fleet"] = n.fleet_size;
        }
        nodes.push_back(std::move(rec));
    }
    doc["nodes"] = std::move(nodes);
    const auto& c = s.cost_table;
    doc["cost_table"] = {{"truck_congested_per_mile", c.truck_congested_per_mile},
                         {"truck_free_per_mile", c.truck_free_per_mile},
                         {"rail_long_per_mile", c.rail_long_per_mile},
                         {"rail_short_per_mile", c.rail_short_per_mile},
                         {"facility_upgrade", c.facility_upgrade},
                         {"rail_short_haul_threshold_miles", c.rail_short_haul_threshold_miles},
                         {"truck_long_haul_threshold_miles", c.truck_long_haul_threshold_miles}};
    const auto& v = s.vehicle_spec;
    doc["vehicle_spec"] = {{"truck_capacity_tons", v.truck_capacity_tons},
                           {"train_capacity_tons", v.train_capacity_tons},
                           {"truck_speed_mph", v.truck_speed_mph},
                           {"train_speed_mph", v.train_speed_mph},
                           {"truck_service_hours", v.truck_service_hours},
                           {"train_service_hours", v.train_service_hours}};
    json shares = json::array();
    for (const auto& sh : s.demand.shares) {
        shares.push_back({{"destination", to_int(sh.destination)}, {"share", sh.fraction}});
    }
    doc["demand"] = {{"annual_tons", s.demand.annual_tons}, {"shares", std::move(shares)}};
    doc["port"] = {{"trucks", s.port_trucks},
                   {"trains", s.port_trains},
                   {"truck_loads", s.truck_eligibility == TruckEligibility::TailOnly ? "tail" : "any"}};
    doc["total_warehouse_trucks"] = s.total_warehouse_trucks;
    doc["horizon_months"] = s.horizon_months;
    if (s.congested_links) {
        json links = json::array();
        for (const auto& [a, b] : *s.congested_links) {
            links.push_back({to_int(a), to_int(b)});
        }
        doc["congested_links"] = std::move(links);
    }
    return doc.dump(2) + "\n";
}

} // namespace portsim
