#include "portsim/errors.hpp"
#include "portsim/metrics.hpp"
#include "portsim/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <limits>
#include <random>

using namespace portsim;

namespace {

Shipment picked(double created, double picked_at, PickupMode mode)
{
    return Shipment{1, 1.0, NodeId{1}, SimTime(created), SimTime(picked_at), mode};
}

RunRow row(std::string setting, std::uint64_t seed, double unmet)
{
    RunRow r;
    r.setting = std::move(setting);
    r.seed = seed;
    r.unmet_tons = unmet;
    return r;
}

} // namespace

TEST_CASE("cost ledger: legs add up")
{
    const CostTable t;
    CostLedger ledger(true);
    CHECK(ledger.record_leg(Mode::Truck, 100, true, t, SimTime(0)) == doctest::Approx(196.00));
    CHECK(ledger.operating_dollars() == doctest::Approx(196.00));
    ledger.record_leg(Mode::Rail, 499, false, t, SimTime(1));
    CHECK(ledger.operating_dollars() == doctest::Approx(196.00 + 1187894.45));
    ledger.record_leg(Mode::Truck, 0, false, t, SimTime(2));
    CHECK(ledger.operating_dollars() == doctest::Approx(196.00 + 1187894.45));
    CHECK(ledger.leg_count() == 3);
    CHECK(ledger.legs().size() == 3);

    CostLedger lean;
    lean.record_leg(Mode::Truck, 1, false, t, SimTime(0));
    CHECK(lean.legs().empty());
    CHECK(lean.leg_count() == 1);
}

TEST_CASE("unmet demand floors per destination")
{
    DemandLedger a;
    a.add_demand(NodeId{1}, 100);
    a.credit_delivery(NodeId{1}, 40);
    CHECK(unmet_demand(a) == doctest::Approx(60));

    DemandLedger b;
    b.add_demand(NodeId{1}, 100);
    b.credit_delivery(NodeId{1}, 100);
    CHECK(unmet_demand(b) == 0.0);

    DemandLedger c;
    c.add_demand(NodeId{1}, 100);
    c.credit_delivery(NodeId{1}, 40);
    c.add_demand(NodeId{2}, 50);
    c.credit_delivery(NodeId{2}, 70);
    CHECK(unmet_demand(c) == doctest::Approx(60));
    CHECK(c.delivered_tons() == doctest::Approx(110));
}

TEST_CASE("dwell: per-mode means in days")
{
    std::vector<Shipment> one{picked(0, 48, PickupMode::Truck)};
    const auto d1 = dwell_summary(one);
    CHECK(d1.truck.mean_days == doctest::Approx(2.0));
    CHECK(d1.rail.count == 0);
    CHECK_FALSE(d1.rail.mean_days.has_value());

    std::vector<Shipment> rail{picked(0, 96, PickupMode::Rail), picked(10, 202, PickupMode::Rail)};
    const auto d2 = dwell_summary(rail);
    CHECK(d2.rail.mean_days == doctest::Approx(6.0));
    CHECK(d2.rail.max_days == doctest::Approx(8.0));

    std::vector<Shipment> mixed{picked(0, 24, PickupMode::Rail), Shipment{2, 1.0, NodeId{1}, SimTime(5), {}, {}}};
    const auto d3 = dwell_summary(mixed);
    CHECK(d3.unpicked == 1);
    CHECK(d3.rail.mean_days == doctest::Approx(1.0));
}

TEST_CASE("report: one run gives a header and one row")
{
    const std::vector<RunRow> rows{row("N-WHS", 1, 5)};
    const std::string csv = runs_csv(rows);
    CHECK(csv.rfind(std::string(kRunsHeader) + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.find(",NA,NA") != std::string::npos);
    CHECK_THROWS_AS(runs_csv(std::vector<RunRow>{}), Error);
}

TEST_CASE("report: summary mean and min")
{
    const std::vector<RunRow> rows{row("A", 1, 10), row("A", 2, 20), row("A", 3, 30), row("B", 1, 7)};
    const auto s = summarize(rows);
    REQUIRE(s.size() == 2);
    CHECK(s[0].setting == "A");
    CHECK(s[0].runs == 3);
    CHECK(s[0].unmet_tons.mean == doctest::Approx(20));
    CHECK(s[0].unmet_tons.min == doctest::Approx(10));
    CHECK_FALSE(s[0].rail_dwell_days.mean.has_value());
    CHECK(summary_line(s[0]).find("(10.0)") != std::string::npos);
}

TEST_CASE("report: runs.csv round-trips at full precision")
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<RunRow> rows;
    for (int i = 0; i < 200; ++i) {
        RunRow r;
        r.setting = i % 2 ? "DRD-0-72" : "N-WHS";
        r.p = i % 11;
        r.seed = gen();
        r.unmet_tons = u(gen) * 1e6;
        r.port_fleet_util = u(gen);
        r.port_rail_util = u(gen) / 3;
        r.operating_cost = u(gen) * 1e9;
        r.capital_cost = 900000.0 * r.p;
        if (i % 3) r.rail_dwell_days = u(gen) * 10;
        if (i % 5) r.truck_dwell_days = std::nextafter(u(gen), 2.0);
        rows.push_back(r);
    }
    CHECK(parse_runs_csv(runs_csv(rows)) == rows);
}

TEST_CASE("report: format_number is shortest round-trip")
{
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, 0.0}) {
        CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("report: emit in both formats")
{
    const std::vector<RunRow> rows{row("A", 1, 10), row("A", 2, 30)};
    const std::string csv = emit_report(rows, ReportFormat::Csv);
    CHECK(csv.find("\n\nsetting,runs,") != std::string::npos);
    const auto doc = nlohmann::json::parse(emit_report(rows, ReportFormat::Json));
    CHECK(doc["runs"].size() == 2);
    CHECK(doc["summary"][0]["unmet_tons"]["mean"].get<double>() == doctest::Approx(20));
}

TEST_CASE("report: malformed runs.csv is rejected")
{
    CHECK_THROWS(parse_runs_csv("not,a,header\n"));
    CHECK_THROWS(parse_runs_csv(std::string(kRunsHeader) + "\nA,1,2,x,0,0,0,0,NA,NA\n"));
}
