#pragma once

#include "portsim/cost.hpp"
#include "portsim/errors.hpp"
#include "portsim/geo.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace portsim {

enum class NodeId : std::uint32_t {};

constexpr std::uint32_t to_int(NodeId id) { return static_cast<std::uint32_t>(id); }

enum class NodeKind { Port, Warehouse, Destination };

std::string_view to_string(NodeKind kind);

struct Node {
    NodeId id{};
    NodeKind kind = NodeKind::Warehouse;
    LatLon location;
    bool intermodal = false;  // rail + truck reachable; the port is always intermodal
    double storage_capacity_tons = 0.0;  // warehouses only
    int fleet_size = 0;                  // trucks based here (warehouses)
    std::string name;
    std::string state;  // two-letter code, drives the default congestion rule

    bool operator==(const Node&) const = default;
};

struct VehicleSpec {
    double truck_capacity_tons = 8.475;
    double train_capacity_tons = 4079.0;
    double truck_speed_mph = 50.0;
    double train_speed_mph = 25.0;
    double truck_service_hours = 2.0;  // per load or unload visit
    double train_service_hours = 8.0;

    bool operator==(const VehicleSpec&) const = default;
};

struct DemandShare {
    NodeId destination{};
    double fraction = 0.0;

    bool operator==(const DemandShare&) const = default;
};

struct DemandTable {
    double annual_tons = 0.0;
    std::vector<DemandShare> shares;  // normalized to sum to one

    bool operator==(const DemandTable&) const = default;
};

using NodePair = std::pair<NodeId, NodeId>;

// Which queued tonnage idle port trucks may take once trains have loaded.
// AnyRemaining: everything left in the queue. TailOnly: only the part beyond
// the last whole train-load, so full train-loads wait for a train.
enum class TruckEligibility { AnyRemaining, TailOnly };

// Immutable description of the network a run simulates.
struct Scenario {
    std::string name;
    std::string description;
    std::vector<Node> nodes;
    CostTable cost_table;
    VehicleSpec vehicle_spec;
    DemandTable demand;
    int port_trucks = 15;
    int port_trains = 2;
    TruckEligibility truck_eligibility = TruckEligibility::AnyRemaining;
    int total_warehouse_trucks = 280;
    int horizon_months = 12;
    // Unordered pairs. nullopt selects the default rule: a leg is congested
    // when both endpoints lie in California.
    std::optional<std::vector<NodePair>> congested_links;

    bool operator==(const Scenario&) const = default;

    const Node& port() const;
    const Node& node(NodeId id) const;
    const Node* find(NodeId id) const;
    std::vector<const Node*> warehouses() const;
    std::vector<const Node*> destinations() const;
    std::size_t non_intermodal_count() const;

    bool is_congested(NodeId a, NodeId b) const;
    double horizon_hours() const;
};

// Parses and validates a JSON scenario document. Absent cost, vehicle and
// fleet fields take their defaults; shares are normalized. Throws
// ValidationError listing every problem found.
Scenario load_scenario(std::string_view document);
Scenario load_scenario_file(const std::filesystem::path& path);

// Lists validation problems without throwing. Empty means the document loads.
std::vector<ValidationIssue> validate_scenario_document(std::string_view document);

std::string serialize_scenario(const Scenario& scenario);

} // namespace portsim
