#include "portsim/errors.hpp"
#include "portsim/model.hpp"
#include "portsim/port.hpp"
#include "portsim/selection.hpp"
#include "portsim/settings.hpp"
#include "portsim/warehouse.hpp"

#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace portsim;
using nlohmann::json;
using testsupport::degrees_for_miles;

namespace {

Shipment lot(std::uint64_t id, double tons, std::uint32_t dest = 100)
{
    return Shipment{id, tons, NodeId{dest}, SimTime(0), std::nullopt, std::nullopt};
}

json node(int id, const char* kind, double lon, const char* state = "XX")
{
    return {{"id", id}, {"kind", kind}, {"lat", 0.0}, {"lon", lon}, {"state", state}};
}

json warehouse(int id, double lon, double cap, bool rail, const char* state = "XX")
{
    json n = node(id, "warehouse", lon, state);
    n["capacity_tons"] = cap;
    n["intermodal"] = rail;
    return n;
}

json doc(json nodes, double annual, int dest)
{
    return {{"name", "t"},
            {"nodes", std::move(nodes)},
            {"demand", {{"annual_tons", annual}, {"shares", json::array({{{"destination", dest}, {"share", 1.0}}})}}},
            {"port", {{"truck_loads", "tail"}}}};
}

std::vector<testsupport::TraceLine> traced(const Scenario& sc, const std::string& setting, std::uint64_t seed,
                                           RunOutcome* out = nullptr)
{
    std::ostringstream os;
    RunOptions o;
    o.trace = &os;
    o.check_conservation = true;
    auto r = simulate(sc, *parse_setting(setting), seed, o);
    if (out) *out = r;
    return testsupport::parse_trace(os.str());
}

} // namespace

TEST_CASE("arrivals: monthly split of annual demand")
{
    DemandTable d{1200, {{NodeId{1}, 1.0}}};
    std::uint64_t id = 0;
    double total = 0;
    for (int m = 0; m < 12; ++m) {
        auto lots = generate_monthly_arrivals(d, m, 12, id);
        REQUIRE(lots.size() == 1);
        CHECK(lots[0].tons == doctest::Approx(100));
        CHECK(lots[0].created_at.hours() == m * 730.0);
        total += lots[0].tons;
    }
    CHECK(total == doctest::Approx(1200));

    DemandTable two{1200, {{NodeId{1}, 0.75}, {NodeId{2}, 0.25}}};
    auto lots = generate_monthly_arrivals(two, 0, 12, id);
    CHECK(lots[0].tons == doctest::Approx(75));
    CHECK(lots[1].tons == doctest::Approx(25));
    CHECK_THROWS_AS(generate_monthly_arrivals(two, 12, 12, id), SimulationError);
}

TEST_CASE("arrivals: eighteen destinations sum to a twelfth of the year")
{
    DemandTable d{1'000'000, {}};
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> raw(18);
    for (auto& r : raw) r = u(gen);
    const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
    for (std::uint32_t i = 0; i < 18; ++i) {
        d.shares.push_back({NodeId{100 + i}, raw[i] / sum});
    }
    std::uint64_t id = 0;
    const auto lots = generate_monthly_arrivals(d, 3, 12, id);
    CHECK(lots.size() == 18);
    double tons = 0;
    for (const auto& l : lots) tons += l.tons;
    CHECK(tons == doctest::Approx(1'000'000.0 / 12).epsilon(1e-12));
}

TEST_CASE("dispatch: a full train leaves and the rest is requeued")
{
    PortQueue q;
    q.push(lot(1, 3000));
    q.push(lot(2, 2000));
    auto plan = dispatch(q, 1, 0, 4079, 8.475);
    REQUIRE(plan.train_loads.size() == 1);
    CHECK(load_tons(plan.train_loads[0]) == doctest::Approx(4079));
    CHECK(q.tons() == doctest::Approx(5000 - 4079));
    CHECK(q.lots().front().id == 2);
}

TEST_CASE("dispatch: small queue goes to one LTL truck")
{
    PortQueue q;
    q.push(lot(1, 8));
    auto plan = dispatch(q, 1, 1, 4079, 8.475);
    CHECK(plan.train_loads.empty());
    REQUIRE(plan.truck_loads.size() == 1);
    CHECK(load_tons(plan.truck_loads[0]) == doctest::Approx(8));
    CHECK(q.empty());
}

TEST_CASE("dispatch: trains never leave below capacity")
{
    PortQueue q;
    q.push(lot(1, 4000));
    auto plan = dispatch(q, 2, 0, 4079, 8.475);
    CHECK(plan.train_loads.empty());
    CHECK(q.tons() == doctest::Approx(4000));
}

TEST_CASE("dispatch: full truckloads first then one partial")
{
    PortQueue q;
    q.push(lot(1, 20));
    auto plan = dispatch(q, 0, 5, 4079, 8.475);
    REQUIRE(plan.truck_loads.size() == 3);
    CHECK(load_tons(plan.truck_loads[0]) == doctest::Approx(8.475));
    CHECK(load_tons(plan.truck_loads[1]) == doctest::Approx(8.475));
    CHECK(load_tons(plan.truck_loads[2]) == doctest::Approx(3.05));
}

TEST_CASE("dispatch: tail-only trucks leave whole train-loads queued")
{
    PortQueue q;
    q.push(lot(1, 4079 * 2 + 10));
    auto plan = dispatch(q, 0, 15, 4079, 8.475, TruckEligibility::TailOnly);
    double trucked = 0;
    for (const auto& l : plan.truck_loads) trucked += load_tons(l);
    CHECK(trucked == doctest::Approx(10));
    CHECK(q.tons() == doctest::Approx(4079 * 2));

    PortQueue any;
    any.push(lot(1, 4079 * 2 + 10));
    auto all = dispatch(any, 0, 15, 4079, 8.475, TruckEligibility::AnyRemaining);
    CHECK(all.truck_loads.size() == 15);
}

TEST_CASE("dispatch: tonnage is conserved over random queues")
{
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> tons(0.1, 3000);
    std::uniform_int_distribution<int> count(0, 6);
    for (int trial = 0; trial < 300; ++trial) {
        PortQueue q;
        double before = 0;
        const int n = 1 + count(gen);
        for (int i = 0; i < n; ++i) {
            const double t = tons(gen);
            before += t;
            q.push(lot(static_cast<std::uint64_t>(i), t));
        }
        const auto elig = trial % 2 ? TruckEligibility::TailOnly : TruckEligibility::AnyRemaining;
        auto plan = dispatch(q, count(gen) % 3, count(gen), 4079, 8.475, elig);
        double after = q.tons();
        for (const auto& l : plan.train_loads) {
            CHECK(load_tons(l) == doctest::Approx(4079));
            after += load_tons(l);
        }
        for (const auto& l : plan.truck_loads) {
            CHECK(load_tons(l) <= 8.475 + 1e-9);
            after += load_tons(l);
        }
        CHECK(after == doctest::Approx(before).epsilon(1e-12));
        int partial = 0;
        for (const auto& l : plan.truck_loads) partial += load_tons(l) < 8.475 - 1e-9 ? 1 : 0;
        CHECK(partial <= 1);
    }
}

TEST_CASE("selection: single candidate, nearest, ties and nothing free")
{
    RngStream s(1, "train.select");
    std::vector<WarehouseView> one{{NodeId{4}, {0, 1}, 50}};
    CHECK(select_warehouse(SelectionPolicy::RandomAvailable, one, 0, {0, 0}, s) == NodeId{4});
    CHECK(select_warehouse(SelectionPolicy::NearestAvailable, one, 0, {0, 0}, s) == NodeId{4});

    const double d10 = degrees_for_miles(10), d40 = degrees_for_miles(40);
    std::vector<WarehouseView> two{{NodeId{1}, {0, d40}, 50}, {NodeId{2}, {0, d10}, 50}};
    CHECK(select_warehouse(SelectionPolicy::NearestAvailable, two, 0, {0, 0}, s) == NodeId{2});

    std::vector<WarehouseView> tie{{NodeId{7}, {0, 1}, 50}, {NodeId{3}, {0, -1}, 50}};
    CHECK(select_warehouse(SelectionPolicy::NearestAvailable, tie, 0, {0, 0}, s) == NodeId{3});

    std::vector<WarehouseView> full{{NodeId{1}, {0, 1}, 0}, {NodeId{2}, {0, 2}, 0}};
    CHECK_FALSE(select_warehouse(SelectionPolicy::RandomAvailable, full, 0, {0, 0}, s));
    CHECK_FALSE(select_warehouse(SelectionPolicy::NearestAvailable, full, 0, {0, 0}, s));
}

TEST_CASE("selection: nearest matches a brute-force scan")
{
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> lat(30, 42), lon(-124, -110), fr(0, 100);
    RngStream s(1, "x");
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<WarehouseView> v;
        for (std::uint32_t i = 0; i < 20; ++i) {
            v.push_back({NodeId{i}, {lat(gen), lon(gen)}, fr(gen) < 30 ? 0.0 : fr(gen)});
        }
        const LatLon from{lat(gen), lon(gen)};
        std::optional<NodeId> best;
        double best_d = 1e300;
        for (const auto& w : v) {
            if (w.free_tons <= kCapacityEpsilon) continue;
            const double d = testsupport::oracle_miles(from.lat, from.lon, w.location.lat, w.location.lon);
            if (d < best_d) {
                best_d = d;
                best = w.id;
            }
        }
        CHECK(select_warehouse(SelectionPolicy::NearestAvailable, v, 0, from, s) == best);
    }
}

TEST_CASE("selection: random is uniform over available candidates")
{
    RngStream s(2, "train.select");
    std::vector<WarehouseView> v{{NodeId{1}, {0, 1}, 10}, {NodeId{2}, {0, 2}, 0}, {NodeId{3}, {0, 3}, 10}};
    int ones = 0, threes = 0;
    for (int i = 0; i < 20000; ++i) {
        auto c = select_warehouse(SelectionPolicy::RandomAvailable, v, 0, {0, 0}, s);
        REQUIRE(c);
        CHECK(*c != NodeId{2});
        (*c == NodeId{1} ? ones : threes)++;
    }
    CHECK(std::abs(ones - 10000) < 400);
}

TEST_CASE("warehouse: truck loading by quantity")
{
    WarehouseInventory w(NodeId{1}, 1000);
    CHECK_FALSE(w.load_truck(8.475));
    w.reserve(100);
    w.receive({{NodeId{100}, 100, SimTime(0)}});
    auto a = w.load_truck(8.475);
    REQUIRE(a);
    CHECK(a->tons == doctest::Approx(8.475));
    CHECK(w.used() == doctest::Approx(91.525));

    WarehouseInventory small(NodeId{2}, 10);
    small.reserve(3);
    small.receive({{NodeId{100}, 3, SimTime(0)}});
    CHECK(small.load_truck(8.475)->tons == doctest::Approx(3));
    CHECK(small.used() == 0.0);
}

TEST_CASE("warehouse: oldest lot decides the destination")
{
    WarehouseInventory w(NodeId{1}, 1000);
    w.reserve(20);
    w.receive({{NodeId{101}, 5, SimTime(1)}, {NodeId{102}, 10, SimTime(2)}, {NodeId{101}, 5, SimTime(3)}});
    auto a = w.load_truck(8.475);
    CHECK(a->destination == NodeId{101});
    CHECK(a->tons == doctest::Approx(8.475));
    auto b = w.load_truck(8.475);
    CHECK(b->destination == NodeId{102});
}

TEST_CASE("warehouse: reservations cap at free capacity")
{
    WarehouseInventory w(NodeId{1}, 100);
    CHECK(w.reserve(70) == doctest::Approx(70));
    CHECK(w.reserve(70) == doctest::Approx(30));
    CHECK(w.free() == doctest::Approx(0));
}

TEST_CASE("train: drops 2000 + 2000 + 79 across three warehouses")
{
    // A, B, C east of the port; C sits closer to B than A does.
    const Scenario sc = load_scenario(doc(json::array({node(0, "port", 0), warehouse(1, 1.0, 2000, true),
                                                       warehouse(2, 2.0, 2000, true), warehouse(3, 2.9, 500, true),
                                                       node(100, "destination", 10)}),
                                          12 * 4079.0, 100)
                                          .dump());
    const auto lines = traced(sc, "N-WHS", 1);
    std::vector<double> drops;
    std::vector<std::string> at;
    for (const auto& l : lines) {
        if (l.kind == "train.drop" && drops.size() < 3) {
            drops.push_back(std::stod(testsupport::field(l.details, "tons")));
            at.push_back(testsupport::field(l.details, "wh"));
        }
    }
    // Min-sequence oracle over the visit order.
    std::vector<double> expected;
    double onboard = 4079;
    for (double free : {2000.0, 2000.0, 500.0}) {
        const double d = std::min(onboard, free);
        if (d > 0) expected.push_back(d);
        onboard -= d;
    }
    CHECK(expected == std::vector<double>{2000, 2000, 79});
    REQUIRE(drops.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(drops[i] == doctest::Approx(expected[i]));
    }
    CHECK(at == std::vector<std::string>{"1", "2", "3"});
    std::size_t rail_legs_first_trip = 0;
    for (const auto& l : lines) {
        if (l.kind == "train.return") break;
        if (testsupport::field(l.details, "leg").rfind("rail", 0) == 0) ++rail_legs_first_trip;
    }
    CHECK(rail_legs_first_trip == 4);  // three legs out, one back
}

TEST_CASE("train: blocked on a full network waits for capacity")
{
    // One small warehouse served by a single truck on a long run: the train
    // fills it and must wait until the truck is back to clear space.
    json d = doc(json::array({node(0, "port", 0), warehouse(1, 1.0, 100, true), node(100, "destination", 5)}),
                 12 * 4079.0, 100);
    d["total_warehouse_trucks"] = 1;
    const Scenario sc = load_scenario(d.dump());
    RunOutcome out;
    const auto lines = traced(sc, "Random-WHS", 1, &out);
    CHECK(std::any_of(lines.begin(), lines.end(), [](const auto& l) { return l.kind == "train.retry"; }));
    CHECK(out.demand.delivered_tons() > 0);
}

TEST_CASE("warehouse truck: congested 100-mile trip costs 2 x 196")
{
    const double d100 = degrees_for_miles(100);
    const Scenario sc = load_scenario(doc(json::array({node(0, "port", 0, "CA"), warehouse(1, d100, 1000, false, "CA"),
                                                       node(100, "destination", 2 * d100, "CA")}),
                                          12 * 8.475, 100)
                                          .dump());
    const auto lines = traced(sc, "Random-WHS", 1);
    double trip = 0;
    int legs = 0;
    for (const auto& l : lines) {
        if ((l.kind == "wh_truck.depart" || l.kind == "wh_truck.deliver") && l.at < 730) {
            const auto legs_here = testsupport::trace_legs({l});
            REQUIRE(legs_here.size() == 1);
            CHECK(legs_here[0].congested);
            trip += legs_here[0].dollars;
            ++legs;
        }
    }
    CHECK(legs == 2);
    CHECK(trip == doctest::Approx(2 * 100 * 1.96).epsilon(1e-9));
}

TEST_CASE("port truck: replenish only above 250 miles and only under a DRD setting")
{
    const double d200 = degrees_for_miles(200), d300 = degrees_for_miles(300);
    auto sc_at = [&](double lon) {
        return load_scenario(doc(json::array({node(0, "port", 0), warehouse(1, lon, 1000, false),
                                              node(100, "destination", lon + 0.1)}),
                                 12 * 8.475, 100)
                                 .dump());
    };
    auto replenishes = [&](const Scenario& sc, const char* setting) {
        const auto lines = traced(sc, setting, 1);
        std::vector<double> delays;
        for (const auto& l : lines) {
            if (l.kind == "truck.replenish_start") delays.push_back(std::stod(testsupport::field(l.details, "delay")));
        }
        return delays;
    };
    CHECK(replenishes(sc_at(d200), "DRD-0-72").empty());
    CHECK(replenishes(sc_at(d300), "Random-WHS").empty());
    const auto delays = replenishes(sc_at(d300), "DRD-0-72");
    CHECK(delays.size() == 12);
    for (double d : delays) {
        CHECK(d >= 0.0);
        CHECK(d <= 72.0);
    }
}

TEST_CASE("model: one truckload a month is delivered in full")
{
    const Scenario sc = load_scenario(doc(json::array({node(0, "port", 0), warehouse(1, 0.5, 100, false),
                                                       node(100, "destination", 1.0)}),
                                          12 * 8.475, 100)
                                          .dump());
    RunOutcome out;
    const auto lines = traced(sc, "Random-WHS", 1, &out);
    CHECK(out.demand.demanded_tons() == doctest::Approx(12 * 8.475));
    CHECK(out.demand.delivered_tons() == doctest::Approx(12 * 8.475));
    CHECK(unmet_demand(out.demand) == doctest::Approx(0).epsilon(1e-9));
    // Hand trace of the first month.
    std::vector<std::string> month0;
    for (const auto& l : lines) {
        if (l.at < 730) month0.push_back(l.kind);
    }
    const std::vector<std::string> expected{"port.arrival",    "truck.load",      "truck.depart",    "truck.arrive",
                                            "truck.drop",      "wh_truck.depart", "wh_truck.arrive", "truck.return",
                                            "wh_truck.deliver", "wh_truck.return"};
    std::vector<std::string> sorted_a = month0, sorted_b = expected;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    CHECK(sorted_a == sorted_b);
    CHECK(month0.front() == "port.arrival");
}

TEST_CASE("model: zero demand costs nothing")
{
    json d = doc(json::array({node(0, "port", 0), warehouse(1, 0.5, 100, false), node(100, "destination", 1.0)}), 0, 100);
    const Scenario sc = load_scenario(d.dump());
    const auto out = simulate(sc, *parse_setting("Random-WHS"), 1);
    CHECK(out.cost.operating_dollars() == 0.0);
    CHECK(out.port_fleet_utilization == 0.0);
    CHECK(out.port_rail_utilization == 0.0);
    CHECK(unmet_demand(out.demand) == 0.0);
}

TEST_CASE("model: no replenish state without a DRD setting")
{
    const Scenario sc = load_scenario_file(testsupport::data_path("scenarios/desk35.json"));
    std::ostringstream os;
    RunOptions o;
    o.trace = &os;
    simulate(sc, *parse_setting("N-WHS"), 3, o);
    CHECK(os.str().find("replenish") == std::string::npos);
}

TEST_CASE("model: bundled scenario conserves mass and keeps costs in step with its trace")
{
    const Scenario sc = load_scenario_file(testsupport::data_path("scenarios/desk35.json"));
    for (const auto& s : canonical_settings()) {
        std::ostringstream os;
        RunOptions o;
        o.trace = &os;
        o.check_conservation = true;
        const auto out = simulate(sc, s, 5, o);
        const double walked = testsupport::walk_operating_cost(sc, testsupport::parse_trace(os.str()));
        CHECK(walked == doctest::Approx(out.cost.operating_dollars()).epsilon(1e-9));
        CHECK(out.demand.delivered_tons() + unmet_demand(out.demand) >= out.demand.demanded_tons() - 1e-6);
    }
}

TEST_CASE("model: trains always leave the port full")
{
    const Scenario sc = load_scenario_file(testsupport::data_path("scenarios/desk35.json"));
    std::ostringstream os;
    RunOptions o;
    o.trace = &os;
    simulate(sc, *parse_setting("Random-WHS"), 2, o);
    int loads = 0;
    for (const auto& l : testsupport::parse_trace(os.str())) {
        if (l.kind == "train.load") {
            ++loads;
            CHECK(std::stod(testsupport::field(l.details, "tons")) == doctest::Approx(4079));
        }
    }
    CHECK(loads > 0);
}
