#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>

#include "dcsim/errors.hpp"
#include "dcsim/scenario.hpp"
#include "dcsim/simulation.hpp"

using namespace dcsim;

TEST_CASE("config serialize -> parse -> serialize is byte-identical") {
  for (const auto& entry : scenario_catalog()) {
    if (entry.is_sweep) continue;
    INFO(entry.name);
    const ScenarioConfig parsed = parse_config(entry.config_json);
    const std::string once = serialize_config(parsed);
    const std::string twice = serialize_config(parse_config(once));
    CHECK(once == twice);
  }
}

TEST_CASE("config comments are accepted") {
  const char* text = R"({
    // comment
    "name": "c", "seed": 1, "arch_option": "Opt5", "duration_s": 1,
    "nodes": [
      {"id": "ue", "role": "UE"},
      {"id": "mn", "role": "MN", "radio": "eLTE"},
      {"id": "gw", "role": "CoreGateway"},
      {"id": "server", "role": "AppServer"}
    ],
    "links": [{"id": "l", "node": "mn", "psi_s": 1, "gamma_s": 0,
               "capacity_mbps": 10, "delay_ms": 1}],
    "bearers": [{"id": "b", "kind": "MCG"}],
    "mptcp": {"mode": "Aggregate", "termination": "AtSGW"}
  })";
  CHECK(parse_config(text).name == "c");
}

TEST_CASE("bad configs are rejected with a field path") {
  SUBCASE("zero duration") {
    ScenarioConfig cfg;
    cfg.name = "x";
    cfg.duration_s = 0;
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  }
  SUBCASE("invalid enum value names the field") {
    try {
      parse_config(R"({"name": "x", "arch_option": "Opt99", "duration_s": 1})");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("arch_option") != std::string::npos);
    }
  }
  SUBCASE("malformed JSON") {
    CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
  }
  SUBCASE("scripted event past the end of the run") {
    ScenarioConfig cfg = parse_config(find_scenario("fig5b-backup")->config_json);
    cfg.scripted_events.push_back({999.0, "link-down", "wigig"});
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  }
}

TEST_CASE("catalog lists the canned experiments") {
  const auto& catalog = scenario_catalog();
  CHECK_FALSE(catalog.empty());
  std::set<std::string> names;
  for (const auto& e : catalog) {
    names.insert(e.name);
    CHECK_FALSE(e.description.empty());
  }
  for (const char* required : {"fig5a-sweep", "fig5b-aggregation", "fig5b-backup",
                               "opt3x-scg-split", "sn-change-atsgw-vs-atmn",
                               "duplicate-reliability"}) {
    INFO(required);
    CHECK(names.contains(required));
  }
  CHECK(find_scenario("fig5b-backup") != nullptr);
  CHECK(find_scenario("fig5b-backup")->is_sweep == false);
  CHECK(find_scenario("no-such-scenario") == nullptr);
}

TEST_CASE("report totals equal the trace column sums") {
  const ScenarioConfig cfg = parse_config(find_scenario("opt3x-scg-split")->config_json);
  const RunReport report = run_scenario(cfg);
  std::uint64_t sum = 0;
  for (const auto& sample : report.trace) {
    for (const auto& pp : sample.paths) {
      sum += static_cast<std::uint64_t>(
          std::llround(pp.throughput_mbps * static_cast<double>(sample.interval_us) / 8.0));
    }
  }
  CHECK(sum == report.totals.bytes_delivered);
  CHECK(report.totals.bytes_delivered == report.totals.segments_delivered * 1500);
}

TEST_CASE("identical seeds reproduce identical traces, different seeds do not") {
  const ScenarioConfig cfg = parse_config(find_scenario("opt3x-scg-split")->config_json);
  const std::string a = trace_to_csv(run_scenario(cfg).trace);
  const std::string b = trace_to_csv(run_scenario(cfg).trace);
  CHECK(a == b);

  RunOptions other;
  other.seed_override = cfg.seed + 1;
  const std::string c = trace_to_csv(run_scenario(cfg, other).trace);
  CHECK(a != c);
}

TEST_CASE("trace CSV has the documented header and row count") {
  const ScenarioConfig cfg = parse_config(find_scenario("fig5b-backup")->config_json);
  const RunReport report = run_scenario(cfg);
  const std::string csv = trace_to_csv(report.trace);
  CHECK(csv.rfind("t_s,path_id,up,throughput_mbps,active,redundant_mbps\n", 0) == 0);
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  // 60 s at 0.5 s sampling, two paths, plus the header line.
  CHECK(rows == 1 + 120 * 2);
}

TEST_CASE("a partial final interval is still sampled") {
  ScenarioConfig cfg = parse_config(find_scenario("opt3x-scg-split")->config_json);
  cfg.duration_s = 1.75;
  const RunReport report = run_scenario(cfg);
  REQUIRE(report.trace.size() == 4);  // 0.5, 1.0, 1.5 and the 0.25 s remainder
  CHECK(report.trace.back().t.seconds() == doctest::Approx(1.75));
  CHECK(report.trace.back().interval_us == 250000);
}

TEST_CASE("availability sweep rows carry the analytic and empirical columns") {
  SweepConfig sweep;
  sweep.theta_grid = {0.5, 0.9};
  sweep.duration_s = 20000;
  const auto rows = run_availability_sweep(sweep);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].theta_dc_analytic == doctest::Approx(0.75));
  CHECK(rows[1].theta_dc_analytic == doctest::Approx(0.99));
  for (const auto& row : rows) {
    CHECK(std::abs(row.theta_dc_empirical - row.theta_dc_analytic) < 0.02);
  }
  const std::string csv = sweep_to_csv(rows);
  CHECK(csv.rfind("theta_single,theta_dc_analytic,theta_dc_empirical\n", 0) == 0);
}

TEST_CASE("sweep config parsing validates its fields") {
  CHECK_THROWS_AS(parse_sweep_config(R"({"theta_grid": []})"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config(R"({"theta_grid": [1.5]})"), ConfigError);
  const SweepConfig s = parse_sweep_config(R"({"theta_grid": [0.8], "cycle_s": 5})");
  CHECK(s.theta_grid.size() == 1);
  CHECK(s.cycle_s == 5);
}

TEST_CASE("default sweep grid spans 0.5 to 0.99") {
  const SweepConfig s = default_sweep_config();
  REQUIRE_FALSE(s.theta_grid.empty());
  CHECK(s.theta_grid.front() == doctest::Approx(0.5));
  CHECK(s.theta_grid.back() == doctest::Approx(0.99));
}
