#include "portsim/model.hpp"

#include "portsim/event_queue.hpp"
#include "portsim/port.hpp"
#include "portsim/resource_pool.hpp"
#include "portsim/rng.hpp"
#include "portsim/selection.hpp"
#include "portsim/warehouse.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <string>
#include <unordered_map>

namespace portsim {

namespace {

enum class EventKind : std::uint8_t {
    MonthlyArrival,
    TrainLoad,
    TrainLoaded,
    TrainArrive,
    TrainUnloaded,
    TrainRetry,
    TrainReturned,
    TruckLoad,
    TruckLoaded,
    TruckArrive,
    TruckReplenished,
    TruckUnloaded,
    TruckRetry,
    TruckReturned,
    WhTruckDepart,
    WhTruckArrive,
    WhTruckDelivered,
    WhTruckReturned,
};

struct Event {
    EventKind kind{};
    int agent = -1;  // train or port-truck index
    int wh = -1;     // warehouse index
    int dest = -1;   // destination index
    double tons = 0.0;
    int month = 0;
};

enum class TrainState { IdleAtPort, Loading, EnRoute, Unloading, Blocked, Returning };
enum class TruckState { Idle, Loading, EnRoute, ReplenishingDriver, Unloading, Blocked, Returning };

struct Train {
    TrainState state = TrainState::IdleAtPort;
    std::vector<Shipment> onboard;
    int at_wh = -1;  // -1: at the port
    int target = -1;
    double drop = 0.0;  // capacity reserved at the target
    bool retry_pending = false;
};

struct PortTruck {
    TruckState state = TruckState::Idle;
    Load cargo;
    int target = -1;
    double leg_miles = 0.0;
    bool retry_pending = false;
};

struct Blocked {
    bool is_train = false;
    int agent = 0;
};

constexpr int kPort = -1;

class Simulation {
public:
    Simulation(const Scenario& scenario, const ModelSetting& setting, std::uint64_t seed, const RunOptions& options);

    RunOutcome run();

private:
    // event handlers; each fills kind_ and details_ for the trace
    void on_monthly_arrival(const Event& e);
    void on_train_load(const Event& e);
    void on_train_loaded(const Event& e);
    void on_train_arrive(const Event& e);
    void on_train_unloaded(const Event& e);
    void on_train_retry(const Event& e);
    void on_train_returned(const Event& e);
    void on_truck_load(const Event& e);
    void on_truck_loaded(const Event& e);
    void on_truck_arrive(const Event& e);
    void on_truck_replenished(const Event& e);
    void on_truck_unloaded(const Event& e);
    void on_truck_retry(const Event& e);
    void on_truck_returned(const Event& e);
    void on_wh_truck_depart(const Event& e);
    void on_wh_truck_arrive(const Event& e);
    void on_wh_truck_delivered(const Event& e);
    void on_wh_truck_returned(const Event& e);

    void dispatch_port();
    void train_leave(int t);
    void truck_leave(int k);
    void load_warehouse_trucks(int w);
    void signal_capacity();

    void schedule(double delay_hours, Event e) { queue_.schedule(now() + delay_hours, e); }
    SimTime now() const { return queue_.now(); }

    NodeId node_of(int wh) const { return wh == kPort ? port_id_ : wh_ids_[static_cast<std::size_t>(wh)]; }
    LatLon location_of(int wh) const
    {
        return wh == kPort ? port_loc_ : wh_loc_[static_cast<std::size_t>(wh)];
    }
    double rail_miles(int from, int to) const;
    void record_leg(Mode mode, NodeId from, NodeId to, double miles);
    void record_pickups(const Load& load, PickupMode mode);

    void check_conservation() const;
    void write_trace(const EventRecord<Event>& rec);

    const Scenario& sc_;
    const ModelSetting& setting_;
    const RunOptions& options_;
    const VehicleSpec& veh_;

    EventQueue<Event> queue_;
    RngStream train_rng_;
    RngStream truck_rng_;
    RngStream replenish_rng_;

    NodeId port_id_{};
    LatLon port_loc_;
    std::vector<NodeId> wh_ids_;
    std::vector<LatLon> wh_loc_;
    std::vector<bool> wh_rail_;
    std::vector<NodeId> dest_ids_;
    std::unordered_map<std::uint32_t, int> dest_index_;
    std::vector<double> port_wh_miles_;
    std::vector<double> wh_wh_miles_;    // row-major W x W
    std::vector<double> wh_dest_miles_;  // row-major W x D

    PortQueue port_queue_;
    std::vector<Train> trains_;
    std::vector<PortTruck> trucks_;
    std::vector<WarehouseInventory> inventories_;
    ResourcePool rail_pool_;
    ResourcePool truck_pool_;
    std::vector<ResourcePool> wh_fleets_;
    std::deque<Blocked> blocked_;

    CostLedger cost_;
    DemandLedger demand_;
    std::vector<Shipment> pickups_;
    double generated_ = 0.0;
    double wh_onboard_ = 0.0;
    std::uint64_t next_shipment_id_ = 1;

    std::string_view kind_;
    std::string details_;
};

Simulation::Simulation(const Scenario& scenario, const ModelSetting& setting, std::uint64_t seed,
                       const RunOptions& options)
    : sc_(scenario)
    , setting_(setting)
    , options_(options)
    , veh_(scenario.vehicle_spec)
    , train_rng_(seed, "train.select")
    , truck_rng_(seed, "port_truck.select")
    , replenish_rng_(seed, "port_truck.replenish")
    , rail_pool_("port.rail", scenario.port_trains)
    , truck_pool_("port.trucks", scenario.port_trucks)
    , cost_(options.keep_records)
{
    const Node& port = sc_.port();
    port_id_ = port.id;
    port_loc_ = port.location;
    for (const Node* w : sc_.warehouses()) {
        wh_ids_.push_back(w->id);
        wh_loc_.push_back(w->location);
        wh_rail_.push_back(w->intermodal);
        inventories_.emplace_back(w->id, w->storage_capacity_tons);
        wh_fleets_.emplace_back("warehouse." + std::to_string(to_int(w->id)), w->fleet_size);
    }
    for (const Node* d : sc_.destinations()) {
        dest_index_[to_int(d->id)] = static_cast<int>(dest_ids_.size());
        dest_ids_.push_back(d->id);
    }
    const std::size_t W = wh_ids_.size();
    const std::size_t D = dest_ids_.size();
    port_wh_miles_.resize(W);
    wh_wh_miles_.resize(W * W);
    wh_dest_miles_.resize(W * D);
    for (std::size_t i = 0; i < W; ++i) {
        port_wh_miles_[i] = great_circle_miles(port_loc_, wh_loc_[i]);
        for (std::size_t j = 0; j < W; ++j) {
            wh_wh_miles_[i * W + j] = great_circle_miles(wh_loc_[i], wh_loc_[j]);
        }
        for (std::size_t k = 0; k < D; ++k) {
            wh_dest_miles_[i * D + k] = great_circle_miles(wh_loc_[i], sc_.node(dest_ids_[k]).location);
        }
    }
    trains_.resize(static_cast<std::size_t>(sc_.port_trains));
    trucks_.resize(static_cast<std::size_t>(sc_.port_trucks));
}

double Simulation::rail_miles(int from, int to) const
{
    if (from == to) {
        return 0.0;
    }
    if (from == kPort) {
        return port_wh_miles_[static_cast<std::size_t>(to)];
    }
    if (to == kPort) {
        return port_wh_miles_[static_cast<std::size_t>(from)];
    }
    return wh_wh_miles_[static_cast<std::size_t>(from) * wh_ids_.size() + static_cast<std::size_t>(to)];
}

void Simulation::record_leg(Mode mode, NodeId from, NodeId to, double miles)
{
    const bool congested = sc_.is_congested(from, to);
    const double dollars = cost_.record_leg(mode, miles, congested, sc_.cost_table, now());
    if (options_.trace != nullptr) {
        details_ += fmt::format(" leg={},{},{},{},{},{}", to_string(mode), to_int(from), to_int(to), miles,
                                congested ? 1 : 0, dollars);
    }
}

void Simulation::record_pickups(const Load& load, PickupMode mode)
{
    for (const auto& piece : load) {
        Shipment s = piece;
        s.picked_up_at = now();
        s.pickup_mode = mode;
        pickups_.push_back(s);
    }
    if (options_.trace != nullptr) {
        details_ += fmt::format(" mode={} pieces=", to_string(mode));
        for (std::size_t i = 0; i < load.size(); ++i) {
            details_ += fmt::format("{}{}:{}:{}:{}", i == 0 ? "" : ";", load[i].id, to_int(load[i].destination),
                                    load[i].tons, load[i].created_at.hours());
        }
    }
}

// --- port ---------------------------------------------------------------

void Simulation::on_monthly_arrival(const Event& e)
{
    kind_ = "port.arrival";
    auto lots = generate_monthly_arrivals(sc_.demand, e.month, sc_.horizon_months, next_shipment_id_);
    double tons = 0.0;
    for (auto& lot : lots) {
        tons += lot.tons;
        demand_.add_demand(lot.destination, lot.tons);
        port_queue_.push(std::move(lot));
    }
    generated_ += tons;
    if (options_.trace != nullptr) {
        details_ = fmt::format("month={} lots={} tons={}", e.month, lots.size(), tons);
    }
    dispatch_port();
}

void Simulation::dispatch_port()
{
    const int idle_trains = static_cast<int>(
        std::count_if(trains_.begin(), trains_.end(), [](const Train& t) { return t.state == TrainState::IdleAtPort; }));
    const int idle_trucks = static_cast<int>(
        std::count_if(trucks_.begin(), trucks_.end(), [](const PortTruck& k) { return k.state == TruckState::Idle; }));
    if (port_queue_.empty() || (idle_trains == 0 && idle_trucks == 0)) {
        return;
    }
    DispatchPlan plan = dispatch(port_queue_, idle_trains, idle_trucks, veh_.train_capacity_tons,
                                 veh_.truck_capacity_tons, sc_.truck_eligibility);
    std::size_t next = 0;
    for (int t = 0; t < static_cast<int>(trains_.size()) && next < plan.train_loads.size(); ++t) {
        Train& train = trains_[static_cast<std::size_t>(t)];
        if (train.state != TrainState::IdleAtPort) {
            continue;
        }
        if (!rail_pool_.acquire(now(), static_cast<std::uint64_t>(t)).granted) {
            throw SimulationError("rail pool exhausted with an idle train");
        }
        train.onboard = std::move(plan.train_loads[next++]);
        train.state = TrainState::Loading;
        train.at_wh = kPort;
        schedule(0.0, {EventKind::TrainLoad, t});
    }
    next = 0;
    for (int k = 0; k < static_cast<int>(trucks_.size()) && next < plan.truck_loads.size(); ++k) {
        PortTruck& truck = trucks_[static_cast<std::size_t>(k)];
        if (truck.state != TruckState::Idle) {
            continue;
        }
        if (!truck_pool_.acquire(now(), static_cast<std::uint64_t>(k)).granted) {
            throw SimulationError("truck pool exhausted with an idle truck");
        }
        truck.cargo = std::move(plan.truck_loads[next++]);
        truck.state = TruckState::Loading;
        schedule(0.0, {EventKind::TruckLoad, k});
    }
}

// --- trains ---------------------------------------------------------------

void Simulation::on_train_load(const Event& e)
{
    kind_ = "train.load";
    Train& train = trains_[static_cast<std::size_t>(e.agent)];
    if (options_.trace != nullptr) {
        details_ = fmt::format("train={} tons={}", e.agent, load_tons(train.onboard));
    }
    record_pickups(train.onboard, PickupMode::Rail);
    schedule(veh_.train_service_hours, {EventKind::TrainLoaded, e.agent});
}

void Simulation::on_train_loaded(const Event& e)
{
    kind_ = "train.depart";
    if (options_.trace != nullptr) {
        details_ = fmt::format("train={}", e.agent);
    }
    train_leave(e.agent);
}

void Simulation::train_leave(int t)
{
    Train& train = trains_[static_cast<std::size_t>(t)];
    const double onboard = load_tons(train.onboard);
    // Preference tiers: a warehouse that takes the whole remaining load, then
    // any free capacity elsewhere, then the warehouse the train is standing at.
    auto candidates = [&](bool include_current) {
        std::vector<WarehouseView> views;
        for (std::size_t i = 0; i < wh_ids_.size(); ++i) {
            if (wh_rail_[i] && (include_current || static_cast<int>(i) != train.at_wh)) {
                views.push_back({wh_ids_[i], wh_loc_[i], inventories_[i].free()});
            }
        }
        return views;
    };
    const LatLon from = location_of(train.at_wh);
    const auto others = candidates(false);
    auto choice = select_warehouse(setting_.selection, others, onboard, from, train_rng_);
    if (!choice) {
        choice = select_warehouse(setting_.selection, others, 0.0, from, train_rng_);
    }
    if (!choice && train.at_wh != kPort) {
        choice = select_warehouse(setting_.selection, candidates(true), 0.0, from, train_rng_);
    }
    if (!choice) {
        if (train.state != TrainState::Blocked) {
            train.state = TrainState::Blocked;
            blocked_.push_back({true, t});
        }
        if (options_.trace != nullptr) {
            details_ += " blocked=1";
        }
        return;
    }
    if (train.state == TrainState::Blocked) {
        std::erase_if(blocked_, [t](const Blocked& b) { return b.is_train && b.agent == t; });
    }
    const auto it = std::find(wh_ids_.begin(), wh_ids_.end(), *choice);
    const int w = static_cast<int>(it - wh_ids_.begin());
    train.target = w;
    train.drop = inventories_[static_cast<std::size_t>(w)].reserve(load_tons(train.onboard));
    train.state = TrainState::EnRoute;
    const double miles = rail_miles(train.at_wh, w);
    record_leg(Mode::Rail, node_of(train.at_wh), node_of(w), miles);
    schedule(miles / veh_.train_speed_mph, {EventKind::TrainArrive, t, w});
}

void Simulation::on_train_arrive(const Event& e)
{
    kind_ = "train.arrive";
    Train& train = trains_[static_cast<std::size_t>(e.agent)];
    train.state = TrainState::Unloading;
    train.at_wh = e.wh;
    if (options_.trace != nullptr) {
        details_ = fmt::format("train={} wh={}", e.agent, to_int(node_of(e.wh)));
    }
    schedule(veh_.train_service_hours, {EventKind::TrainUnloaded, e.agent, e.wh});
}

void Simulation::on_train_unloaded(const Event& e)
{
    kind_ = "train.drop";
    Train& train = trains_[static_cast<std::size_t>(e.agent)];
    // Drop the reserved tonnage, first-loaded pieces first.
    std::vector<InventoryLot> cargo;
    double need = train.drop;
    std::vector<Shipment> kept;
    for (auto& piece : train.onboard) {
        if (need <= 1e-9) {
            kept.push_back(piece);
            continue;
        }
        const double take = std::min(piece.tons, need);
        cargo.push_back({piece.destination, take, now()});
        need -= take;
        if (piece.tons - take > 1e-9) {
            piece.tons -= take;
            kept.push_back(piece);
        }
    }
    train.onboard = std::move(kept);
    inventories_[static_cast<std::size_t>(e.wh)].receive(std::move(cargo));
    if (options_.trace != nullptr) {
        details_ = fmt::format("train={} wh={} tons={} onboard={}", e.agent, to_int(node_of(e.wh)), train.drop,
                               load_tons(train.onboard));
    }
    train.drop = 0.0;
    load_warehouse_trucks(e.wh);

    if (!train.onboard.empty()) {
        train_leave(e.agent);
        return;
    }
    train.state = TrainState::Returning;
    const double miles = rail_miles(e.wh, kPort);
    record_leg(Mode::Rail, node_of(e.wh), port_id_, miles);
    schedule(miles / veh_.train_speed_mph, {EventKind::TrainReturned, e.agent});
}

void Simulation::on_train_retry(const Event& e)
{
    kind_ = "train.retry";
    Train& train = trains_[static_cast<std::size_t>(e.agent)];
    train.retry_pending = false;
    if (options_.trace != nullptr) {
        details_ = fmt::format("train={}", e.agent);
    }
    if (train.state == TrainState::Blocked) {
        train_leave(e.agent);
    }
}

void Simulation::on_train_returned(const Event& e)
{
    kind_ = "train.return";
    Train& train = trains_[static_cast<std::size_t>(e.agent)];
    train.state = TrainState::IdleAtPort;
    train.at_wh = kPort;
    rail_pool_.release(now());
    if (options_.trace != nullptr) {
        details_ = fmt::format("train={}", e.agent);
    }
    dispatch_port();
}

// --- port trucks ------------------------------------------------------------

void Simulation::on_truck_load(const Event& e)
{
    kind_ = "truck.load";
    PortTruck& truck = trucks_[static_cast<std::size_t>(e.agent)];
    if (options_.trace != nullptr) {
        details_ = fmt::format("truck={} tons={}", e.agent, load_tons(truck.cargo));
    }
    record_pickups(truck.cargo, PickupMode::Truck);
    schedule(veh_.truck_service_hours, {EventKind::TruckLoaded, e.agent});
}

void Simulation::on_truck_loaded(const Event& e)
{
    kind_ = "truck.depart";
    if (options_.trace != nullptr) {
        details_ = fmt::format("truck={}", e.agent);
    }
    truck_leave(e.agent);
}

void Simulation::truck_leave(int k)
{
    PortTruck& truck = trucks_[static_cast<std::size_t>(k)];
    const double tons = load_tons(truck.cargo);
    std::vector<WarehouseView> views;
    views.reserve(wh_ids_.size());
    for (std::size_t i = 0; i < wh_ids_.size(); ++i) {
        views.push_back({wh_ids_[i], wh_loc_[i], inventories_[i].free()});
    }
    // The whole load goes to one warehouse, so it must fit there.
    auto choice = select_warehouse(SelectionPolicy::RandomAvailable, views, tons, port_loc_, truck_rng_);
    if (!choice) {
        if (truck.state != TruckState::Blocked) {
            truck.state = TruckState::Blocked;
            blocked_.push_back({false, k});
        }
        if (options_.trace != nullptr) {
            details_ += " blocked=1";
        }
        return;
    }
    if (truck.state == TruckState::Blocked) {
        std::erase_if(blocked_, [k](const Blocked& b) { return !b.is_train && b.agent == k; });
    }
    const auto it = std::find(wh_ids_.begin(), wh_ids_.end(), *choice);
    const int w = static_cast<int>(it - wh_ids_.begin());
    truck.target = w;
    inventories_[static_cast<std::size_t>(w)].reserve(tons);
    truck.state = TruckState::EnRoute;
    const double miles = port_wh_miles_[static_cast<std::size_t>(w)];
    truck.leg_miles = miles;
    record_leg(Mode::Truck, port_id_, node_of(w), miles);
    schedule(miles / veh_.truck_speed_mph, {EventKind::TruckArrive, k, w});
}

void Simulation::on_truck_arrive(const Event& e)
{
    PortTruck& truck = trucks_[static_cast<std::size_t>(e.agent)];
    const bool long_haul = truck.leg_miles > sc_.cost_table.truck_long_haul_threshold_miles;
    if (long_haul && setting_.replenish.kind == ReplenishPolicy::Kind::Uniform) {
        kind_ = "truck.replenish_start";
        const double delay = replenish_rng_.uniform(0.0, setting_.replenish.max_hours);
        truck.state = TruckState::ReplenishingDriver;
        if (options_.trace != nullptr) {
            details_ = fmt::format("truck={} wh={} delay={}", e.agent, to_int(node_of(e.wh)), delay);
        }
        schedule(delay, {EventKind::TruckReplenished, e.agent, e.wh});
        return;
    }
    kind_ = "truck.arrive";
    truck.state = TruckState::Unloading;
    if (options_.trace != nullptr) {
        details_ = fmt::format("truck={} wh={}", e.agent, to_int(node_of(e.wh)));
    }
    schedule(veh_.truck_service_hours, {EventKind::TruckUnloaded, e.agent, e.wh});
}

void Simulation::on_truck_replenished(const Event& e)
{
    kind_ = "truck.replenish_end";
    trucks_[static_cast<std::size_t>(e.agent)].state = TruckState::Unloading;
    if (options_.trace != nullptr) {
        details_ = fmt::format("truck={} wh={}", e.agent, to_int(node_of(e.wh)));
    }
    schedule(veh_.truck_service_hours, {EventKind::TruckUnloaded, e.agent, e.wh});
}

void Simulation::on_truck_unloaded(const Event& e)
{
    kind_ = "truck.drop";
    PortTruck& truck = trucks_[static_cast<std::size_t>(e.agent)];
    std::vector<InventoryLot> cargo;
    for (const auto& piece : truck.cargo) {
        cargo.push_back({piece.destination, piece.tons, now()});
    }
    const double tons = load_tons(truck.cargo);
    truck.cargo.clear();
    inventories_[static_cast<std::size_t>(e.wh)].receive(std::move(cargo));
    if (options_.trace != nullptr) {
        details_ = fmt::format("truck={} wh={} tons={}", e.agent, to_int(node_of(e.wh)), tons);
    }
    load_warehouse_trucks(e.wh);
    truck.state = TruckState::Returning;
    const double miles = port_wh_miles_[static_cast<std::size_t>(e.wh)];
    record_leg(Mode::Truck, node_of(e.wh), port_id_, miles);
    schedule(miles / veh_.truck_speed_mph, {EventKind::TruckReturned, e.agent});
}

void Simulation::on_truck_retry(const Event& e)
{
    kind_ = "truck.retry";
    PortTruck& truck = trucks_[static_cast<std::size_t>(e.agent)];
    truck.retry_pending = false;
    if (options_.trace != nullptr) {
        details_ = fmt::format("truck={}", e.agent);
    }
    if (truck.state == TruckState::Blocked) {
        truck_leave(e.agent);
    }
}

void Simulation::on_truck_returned(const Event& e)
{
    kind_ = "truck.return";
    trucks_[static_cast<std::size_t>(e.agent)].state = TruckState::Idle;
    truck_pool_.release(now());
    if (options_.trace != nullptr) {
        details_ = fmt::format("truck={}", e.agent);
    }
    dispatch_port();
}

// --- warehouse trucks -------------------------------------------------------

void Simulation::load_warehouse_trucks(int w)
{
    auto& inv = inventories_[static_cast<std::size_t>(w)];
    auto& fleet = wh_fleets_[static_cast<std::size_t>(w)];
    bool freed = false;
    while (fleet.idle() > 0) {
        auto load = inv.load_truck(veh_.truck_capacity_tons);
        if (!load) {
            break;
        }
        fleet.acquire(now(), 0);
        wh_onboard_ += load->tons;
        freed = true;
        const int dest = dest_index_.at(to_int(load->destination));
        schedule(veh_.truck_service_hours, {EventKind::WhTruckDepart, -1, w, dest, load->tons});
    }
    if (freed) {
        signal_capacity();
    }
}

void Simulation::signal_capacity()
{
    for (const auto& b : blocked_) {
        bool& pending = b.is_train ? trains_[static_cast<std::size_t>(b.agent)].retry_pending
                                   : trucks_[static_cast<std::size_t>(b.agent)].retry_pending;
        if (!pending) {
            pending = true;
            schedule(0.0, {b.is_train ? EventKind::TrainRetry : EventKind::TruckRetry, b.agent});
        }
    }
}

void Simulation::on_wh_truck_depart(const Event& e)
{
    kind_ = "wh_truck.depart";
    const std::size_t D = dest_ids_.size();
    const double miles = wh_dest_miles_[static_cast<std::size_t>(e.wh) * D + static_cast<std::size_t>(e.dest)];
    if (options_.trace != nullptr) {
        details_ = fmt::format("wh={} dest={} tons={}", to_int(node_of(e.wh)), to_int(dest_ids_[static_cast<std::size_t>(e.dest)]),
                               e.tons);
    }
    record_leg(Mode::Truck, node_of(e.wh), dest_ids_[static_cast<std::size_t>(e.dest)], miles);
    Event next = e;
    next.kind = EventKind::WhTruckArrive;
    schedule(miles / veh_.truck_speed_mph, next);
}

void Simulation::on_wh_truck_arrive(const Event& e)
{
    kind_ = "wh_truck.arrive";
    if (options_.trace != nullptr) {
        details_ = fmt::format("wh={} dest={}", to_int(node_of(e.wh)), to_int(dest_ids_[static_cast<std::size_t>(e.dest)]));
    }
    Event next = e;
    next.kind = EventKind::WhTruckDelivered;
    schedule(veh_.truck_service_hours, next);
}

void Simulation::on_wh_truck_delivered(const Event& e)
{
    kind_ = "wh_truck.deliver";
    const NodeId dest = dest_ids_[static_cast<std::size_t>(e.dest)];
    demand_.credit_delivery(dest, e.tons);
    wh_onboard_ -= e.tons;
    if (options_.trace != nullptr) {
        details_ = fmt::format("wh={} dest={} tons={}", to_int(node_of(e.wh)), to_int(dest), e.tons);
    }
    const std::size_t D = dest_ids_.size();
    const double miles = wh_dest_miles_[static_cast<std::size_t>(e.wh) * D + static_cast<std::size_t>(e.dest)];
    record_leg(Mode::Truck, dest, node_of(e.wh), miles);
    Event next = e;
    next.kind = EventKind::WhTruckReturned;
    schedule(miles / veh_.truck_speed_mph, next);
}

void Simulation::on_wh_truck_returned(const Event& e)
{
    kind_ = "wh_truck.return";
    wh_fleets_[static_cast<std::size_t>(e.wh)].release(now());
    if (options_.trace != nullptr) {
        details_ = fmt::format("wh={}", to_int(node_of(e.wh)));
    }
    load_warehouse_trucks(e.wh);
}

// --- bookkeeping -------------------------------------------------------------

void Simulation::check_conservation() const
{
    double onboard = wh_onboard_;
    for (const auto& t : trains_) {
        onboard += load_tons(t.onboard);
    }
    for (const auto& k : trucks_) {
        onboard += load_tons(k.cargo);
    }
    double stored = 0.0;
    for (const auto& inv : inventories_) {
        stored += inv.used();
    }
    const double accounted = port_queue_.tons() + onboard + stored + demand_.delivered_tons();
    if (std::abs(accounted - generated_) > 1e-6 + 1e-9 * generated_) {
        throw SimulationError(fmt::format("mass balance violated at t={}: generated {} but accounted {}",
                                          now().hours(), generated_, accounted));
    }
}

void Simulation::write_trace(const EventRecord<Event>& rec)
{
    *options_.trace << fmt::format("{}\t{}\t{}\t{}\n", rec.fire_at.hours(), rec.sequence, kind_, details_);
}

RunOutcome Simulation::run()
{
    for (int m = 0; m < sc_.horizon_months; ++m) {
        queue_.schedule(SimTime::from_months(m), {EventKind::MonthlyArrival, -1, -1, -1, 0.0, m});
    }
    const SimTime horizon(sc_.horizon_hours());
    std::uint64_t events = 0;
    while (const auto* head = queue_.peek()) {
        if (head->fire_at > horizon) {
            break;
        }
        const auto rec = *queue_.advance();
        details_.clear();
        const Event& e = rec.payload;
        switch (e.kind) {
        case EventKind::MonthlyArrival: on_monthly_arrival(e); break;
        case EventKind::TrainLoad: on_train_load(e); break;
        case EventKind::TrainLoaded: on_train_loaded(e); break;
        case EventKind::TrainArrive: on_train_arrive(e); break;
        case EventKind::TrainUnloaded: on_train_unloaded(e); break;
        case EventKind::TrainRetry: on_train_retry(e); break;
        case EventKind::TrainReturned: on_train_returned(e); break;
        case EventKind::TruckLoad: on_truck_load(e); break;
        case EventKind::TruckLoaded: on_truck_loaded(e); break;
        case EventKind::TruckArrive: on_truck_arrive(e); break;
        case EventKind::TruckReplenished: on_truck_replenished(e); break;
        case EventKind::TruckUnloaded: on_truck_unloaded(e); break;
        case EventKind::TruckRetry: on_truck_retry(e); break;
        case EventKind::TruckReturned: on_truck_returned(e); break;
        case EventKind::WhTruckDepart: on_wh_truck_depart(e); break;
        case EventKind::WhTruckArrive: on_wh_truck_arrive(e); break;
        case EventKind::WhTruckDelivered: on_wh_truck_delivered(e); break;
        case EventKind::WhTruckReturned: on_wh_truck_returned(e); break;
        }
        ++events;
        if (options_.trace != nullptr) {
            write_trace(rec);
        }
        if (options_.check_conservation) {
            check_conservation();
        }
    }

    RunOutcome out;
    out.port_fleet_utilization = truck_pool_.utilization(horizon);
    out.port_rail_utilization = rail_pool_.utilization(horizon);
    for (std::size_t i = 0; i < wh_ids_.size(); ++i) {
        out.warehouse_utilization.push_back({wh_ids_[i], wh_fleets_[i].utilization(horizon)});
    }
    for (const auto& lot : port_queue_.lots()) {
        pickups_.push_back(lot);  // never picked up
    }
    out.dwell = dwell_summary(pickups_);
    out.generated_tons = generated_;
    out.events = events;
    out.cost = std::move(cost_);
    out.demand = std::move(demand_);
    if (options_.keep_records) {
        out.shipments = std::move(pickups_);
    }
    return out;
}

} // namespace

RunOutcome simulate(const Scenario& scenario, const ModelSetting& setting, std::uint64_t seed,
                    const RunOptions& options)
{
    Simulation sim(scenario, setting, seed, options);
    return sim.run();
}

} // namespace portsim
