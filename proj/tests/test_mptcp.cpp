#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

#include "dcsim/engine.hpp"
#include "dcsim/link.hpp"
#include "dcsim/mptcp.hpp"
#include "dcsim/topology.hpp"

using namespace dcsim;

namespace {

struct PathSetup {
  std::string id;
  double capacity_mbps{50};
  double delay_ms{10};
  bool backup{false};
  PathVariant variant{PathVariant::CellularMN};
};

/// Engine + links + connection wired the same way the scenario runner does.
struct Harness {
  Engine engine;
  std::vector<std::unique_ptr<Link>> links;
  std::unique_ptr<MptcpConnection> conn;

  Harness(const std::vector<PathSetup>& setups, const MptcpSettings& settings,
          std::uint64_t seed = 1) {
    std::vector<PathDescriptor> paths;
    std::vector<Link*> raw;
    for (const auto& s : setups) {
      LinkSpec spec;
      spec.id = s.id;
      spec.node = s.id + "-node";
      spec.psi_s = 1000;
      spec.gamma_s = 0;
      spec.capacity_mbps = s.capacity_mbps;
      spec.delay_ms = s.delay_ms;
      spec.backup = s.backup;
      links.push_back(std::make_unique<Link>(spec, engine, seed));
      PathDescriptor p;
      p.id = s.id;
      p.variant = s.variant;
      p.link_id = s.id;
      p.hops = {{"gw->" + s.id, 5.0}};
      p.bearer_id = "b";
      p.backup = s.backup;
      paths.push_back(std::move(p));
      raw.push_back(links.back().get());
    }
    conn = std::make_unique<MptcpConnection>(engine, paths, raw, settings);
    for (auto& l : links) {
      l->set_observer([this](Link& link, bool up) { conn->on_link_transition(link, up); });
    }
  }

  void run_to(double t_s) { engine.run_until(SimTime::from_seconds(t_s)); }
  const Subflow& sf(std::size_t i) const { return conn->subflows()[i]; }
};

MptcpSettings settings(SchedulerMode mode) {
  MptcpSettings s;
  s.mode = mode;
  return s;
}

}  // namespace

TEST_CASE("reorder buffer releases in-order data immediately") {
  ReorderBuffer rb(16);
  auto r0 = rb.insert(0, 0);
  CHECK_FALSE(r0.duplicate);
  REQUIRE(r0.released.size() == 1);
  CHECK(r0.released[0] == std::pair<std::uint64_t, std::size_t>{0, 0});
  CHECK(rb.expected() == 1);
}

TEST_CASE("reorder buffer holds gaps and releases contiguously") {
  ReorderBuffer rb(16);
  auto r1 = rb.insert(1, 1);
  CHECK(r1.released.empty());
  CHECK(rb.held() == 1);
  auto r0 = rb.insert(0, 0);
  REQUIRE(r0.released.size() == 2);
  // First-copy path attribution survives the hold.
  CHECK(r0.released[0] == std::pair<std::uint64_t, std::size_t>{0, 0});
  CHECK(r0.released[1] == std::pair<std::uint64_t, std::size_t>{1, 1});
  CHECK(rb.held() == 0);
}

TEST_CASE("reorder buffer flags duplicates") {
  ReorderBuffer rb(16);
  rb.insert(0, 0);
  CHECK(rb.insert(0, 1).duplicate);
  rb.insert(2, 0);
  CHECK(rb.insert(2, 1).duplicate);  // still held, not yet released
  CHECK(rb.seen(0));
  CHECK(rb.seen(2));
  CHECK_FALSE(rb.seen(1));
}

TEST_CASE("reorder buffer abandons the head-of-line gap on overflow") {
  ReorderBuffer rb(2);
  rb.insert(1, 0);
  rb.insert(2, 0);
  auto r = rb.insert(3, 0);  // seq 0 never arrives; capacity exceeded
  CHECK(r.dropped == 1);
  CHECK(r.released.size() == 3);
  CHECK(rb.expected() == 4);
}

TEST_CASE("subflows establish after one handshake RTT") {
  // fixed 5 ms + link 10 ms one way => srtt 30 ms.
  Harness h({{"a"}, {"b"}}, settings(SchedulerMode::Aggregate));
  h.conn->open();
  h.run_to(0.029);
  CHECK(h.sf(0).state == SubflowState::Establishing);
  h.run_to(0.031);
  CHECK(h.sf(0).state == SubflowState::Active);
  CHECK(h.sf(1).state == SubflowState::Active);
}

TEST_CASE("a link that is down at open stays in Establishing") {
  Harness h({{"a"}, {"b"}}, settings(SchedulerMode::Aggregate));
  h.links[1]->force_down();
  h.conn->open();
  h.run_to(1.0);
  CHECK(h.sf(0).state == SubflowState::Active);
  CHECK(h.sf(1).state == SubflowState::Establishing);
}

TEST_CASE("aggregate mode saturates the sum of both capacities") {
  Harness h({{"a", 50}, {"b", 30}}, settings(SchedulerMode::Aggregate));
  h.conn->open();
  h.run_to(10.0);
  const ConnectionTotals t = h.conn->totals(h.engine.now());
  const double mbps = static_cast<double>(t.bytes_delivered) * 8.0 / 10.0 / 1e6;
  CHECK(mbps == doctest::Approx(80.0).epsilon(0.02));
  CHECK(t.reorder_drops == 0);
}

TEST_CASE("aggregate scheduler picks the shorter-queue/rtt subflow") {
  MptcpSettings s = settings(SchedulerMode::Aggregate);
  s.demand_mbps = 1.0;  // keep queues empty so srtt dominates the metric
  Harness h({{"slow", 10, 40.0}, {"fast", 80, 2.0}}, s);
  h.conn->open();
  h.run_to(0.2);
  const auto sel = h.conn->select_for_next_segment();
  REQUIRE(sel.size() == 1);
  CHECK(sel[0]->path.id == "fast");
}

TEST_CASE("duplicate mode offers the segment to every active subflow") {
  MptcpSettings s = settings(SchedulerMode::Duplicate);
  s.demand_mbps = 1.0;
  Harness h({{"a"}, {"b"}}, s);
  h.conn->open();
  h.run_to(0.05);
  CHECK(h.conn->select_for_next_segment().size() == 2);
}

TEST_CASE("backup subflow carries traffic only during regular-path outages") {
  Harness h({{"wigig", 200, 1.0}, {"wifi", 30, 2.0, true}}, settings(SchedulerMode::Backup));
  h.conn->open();
  h.run_to(5.0);
  CHECK(h.sf(0).bytes_acked > 0);
  CHECK(h.sf(1).bytes_acked == 0);

  h.engine.schedule(SimTime::from_seconds(5), EventKind::Scripted,
                    [&] { h.links[0]->force_down(); });
  h.run_to(7.0);  // detection 200 ms + switch, then well over a second of wifi
  CHECK(h.sf(1).bytes_acked > 0);
  const std::uint64_t regular_at_7 = h.sf(0).bytes_acked;

  h.engine.schedule(SimTime::from_seconds(7), EventKind::Scripted,
                    [&] { h.links[0]->force_up(); });
  h.run_to(8.0);
  CHECK(h.sf(0).bytes_acked > regular_at_7);  // traffic returned to the regular path
  const std::uint64_t backup_at_8 = h.sf(1).bytes_acked;
  h.run_to(9.0);
  CHECK(h.sf(1).bytes_acked == backup_at_8);  // backup idle again
}

TEST_CASE("duplicate mode delivers iff at least one path is up (OR semantics)") {
  for (bool up_a : {false, true}) {
    for (bool up_b : {false, true}) {
      Harness h({{"a"}, {"b"}}, settings(SchedulerMode::Duplicate));
      if (!up_a) h.links[0]->force_down();
      if (!up_b) h.links[1]->force_down();
      h.conn->open();
      h.run_to(0.5);
      const ConnectionTotals t = h.conn->totals(h.engine.now());
      INFO("up_a=" << up_a << " up_b=" << up_b);
      CHECK((t.segments_delivered > 0) == (up_a || up_b));
    }
  }
}

TEST_CASE("failure mid-transfer keeps the application stream gap-free") {
  MptcpSettings s = settings(SchedulerMode::Aggregate);
  s.demand_mbps = 20.0;
  Harness h({{"a", 50}, {"b", 30}}, s);
  h.conn->open();
  h.engine.schedule(SimTime::from_seconds(2), EventKind::Scripted,
                    [&] { h.links[1]->force_down(); });
  h.run_to(10.0);
  const ConnectionTotals t = h.conn->totals(h.engine.now());
  // In-flight and queued segments on the failed path were retransmitted on
  // the surviving one: nothing was abandoned.
  CHECK(t.reorder_drops == 0);
  CHECK(t.bytes_delivered == t.segments_delivered * 1500);
  const double expected_segments = 20e6 * 10.0 / 8.0 / 1500.0;
  CHECK(static_cast<double>(t.segments_delivered) ==
        doctest::Approx(expected_segments).epsilon(0.01));
}

TEST_CASE("sn change interrupts only gateway-terminated connections") {
  SUBCASE("AtSGW blocks the SN subflow for t_interrupt") {
    MptcpSettings s = settings(SchedulerMode::Aggregate);
    s.termination = TerminationPoint::AtSGW;
    s.t_interrupt_ms = 500;
    Harness h({{"mn", 50, 10, false, PathVariant::CellularMN},
               {"sn", 80, 5, false, PathVariant::CellularSN}},
              s);
    h.conn->open();
    h.run_to(1.0);
    Micros applied = -1;
    h.engine.schedule(SimTime::from_seconds(1), EventKind::SnChange,
                      [&] { applied = h.conn->sn_change(); });
    h.run_to(1.1);
    CHECK(applied == micros_from_ms(500));
    CHECK(h.sf(1).state == SubflowState::Degraded);
    CHECK(h.sf(0).state == SubflowState::Active);
    h.run_to(1.6);  // t_interrupt elapsed, re-handshake under way
    h.run_to(2.0);
    CHECK(h.sf(1).state == SubflowState::Active);
  }
  SUBCASE("AtMN sees no interruption") {
    MptcpSettings s = settings(SchedulerMode::Aggregate);
    s.termination = TerminationPoint::AtMN;
    Harness h({{"mn", 50, 10, false, PathVariant::CellularMN},
               {"sn", 80, 5, false, PathVariant::CellularSN}},
              s);
    h.conn->open();
    h.run_to(1.0);
    CHECK(h.conn->sn_change() == 0);
    CHECK(h.sf(1).state == SubflowState::Active);
  }
  SUBCASE("no SN path means nothing to interrupt") {
    MptcpSettings s = settings(SchedulerMode::Aggregate);
    s.termination = TerminationPoint::AtSGW;
    Harness h({{"mn", 50, 10, false, PathVariant::CellularMN}}, s);
    h.conn->open();
    h.run_to(1.0);
    CHECK(h.conn->sn_change() == 0);
  }
}

TEST_CASE("demand zero produces an idle but established connection") {
  MptcpSettings s = settings(SchedulerMode::Aggregate);
  s.demand_mbps = 0.0;
  Harness h({{"a"}, {"b"}}, s);
  h.conn->open();
  h.run_to(5.0);
  CHECK(h.sf(0).state == SubflowState::Active);
  CHECK(h.conn->totals(h.engine.now()).segments_sent == 0);
}

TEST_CASE("stall time accrues only while no subflow is active") {
  Harness h({{"a", 50, 10}}, settings(SchedulerMode::Aggregate));
  h.conn->open();
  h.run_to(10.0);
  const ConnectionTotals t = h.conn->totals(h.engine.now());
  // Only the initial 30 ms handshake counts as stall.
  CHECK(t.stall_time_s == doctest::Approx(0.030));
}

TEST_CASE("a custom scheduler policy overrides path selection") {
  MptcpSettings s = settings(SchedulerMode::Aggregate);
  s.demand_mbps = 10.0;  // below either capacity, so the policy alone decides
  Harness h({{"a", 50, 1.0}, {"b", 30, 40.0}}, s);
  h.conn->set_policy([](std::vector<Subflow*>& eligible, const RoutingContext&) -> Subflow* {
    for (auto* sf : eligible) {
      if (sf->path.id == "b") return sf;  // deliberately prefer the worse path
    }
    return eligible.empty() ? nullptr : eligible.front();
  });
  h.conn->open();
  h.run_to(2.0);
  CHECK(h.sf(1).bytes_acked > h.sf(0).bytes_acked);
}
