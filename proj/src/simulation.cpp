#include "dcsim/simulation.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "dcsim/engine.hpp"
#include "dcsim/errors.hpp"
#include "dcsim/link.hpp"
#include "dcsim/topology.hpp"

namespace dcsim {

using nlohmann::json;

namespace {

void append_formatted(std::string& out, const char* fmt, ...) {
  char buf[128];
  va_list args;
  va_start(args, fmt);
  const int n = vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out.append(buf, static_cast<std::size_t>(n));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeAbort("cannot open output file '" + path + "'");
  out << content;
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& config_in, const RunOptions& options) {
  ScenarioConfig config = config_in;
  if (options.seed_override) config.seed = *options.seed_override;

  Topology topo = build_topology(config);

  Engine engine;
  std::map<std::string, std::unique_ptr<Link>> links;
  for (const auto& spec : topo.links) {
    links.emplace(spec.id, std::make_unique<Link>(spec, engine, config.seed));
  }

  const std::vector<PathDescriptor> paths = topo.connection_paths();
  std::vector<Link*> path_links;
  path_links.reserve(paths.size());
  for (const auto& p : paths) path_links.push_back(links.at(p.link_id).get());

  MptcpConnection conn(engine, paths, path_links, config.mptcp);
  for (auto& [id, link] : links) {
    link->set_observer([&conn](Link& l, bool up) { conn.on_link_transition(l, up); });
  }

  const Micros duration = micros_from_seconds(config.duration_s);
  const Micros interval = micros_from_seconds(config.sample_interval_s);

  RunReport report;
  report.config = config;
  report.paths = paths;

  // Sampler ticks are scheduled first so that, at equal timestamps, a tick
  // observes the interval that just ended before same-instant events run.
  ConnectionTotals final_totals{};
  auto tick = [&](Micros tick_interval) {
    TraceSample sample;
    sample.t = engine.now();
    sample.interval_us = tick_interval;
    double aggregate = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto counts = conn.take_interval(i);
      TraceSample::PerPath pp;
      pp.path_id = paths[i].id;
      pp.up = path_links[i]->up();
      pp.active = conn.subflows()[i].state == SubflowState::Active;
      pp.throughput_mbps =
          static_cast<double>(counts.delivered_bytes) * 8.0 / static_cast<double>(tick_interval);
      pp.redundant_mbps =
          static_cast<double>(counts.redundant_bytes) * 8.0 / static_cast<double>(tick_interval);
      aggregate += pp.throughput_mbps;
      sample.paths.push_back(std::move(pp));
    }
    sample.aggregate_mbps = aggregate;
    report.trace.push_back(std::move(sample));
    if (engine.now().us == duration) final_totals = conn.totals(engine.now());
  };
  Micros last_tick = 0;
  for (Micros t = interval; t <= duration; t += interval) {
    engine.schedule(SimTime{t}, EventKind::SampleTick, [&tick, interval] { tick(interval); });
    last_tick = t;
  }
  if (last_tick < duration) {
    const Micros rest = duration - last_tick;
    engine.schedule(SimTime{duration}, EventKind::SampleTick, [&tick, rest] { tick(rest); });
  }

  for (const auto& ev : config.scripted_events) {
    const SimTime at = SimTime::from_seconds(ev.at_s);
    if (ev.kind == "link-down") {
      Link* link = links.at(ev.link).get();
      engine.schedule(at, EventKind::Scripted, [link] { link->force_down(); });
    } else if (ev.kind == "link-up") {
      Link* link = links.at(ev.link).get();
      engine.schedule(at, EventKind::Scripted, [link] { link->force_up(); });
    } else {  // sn-change
      engine.schedule(at, EventKind::SnChange, [&conn, &report] {
        const Micros applied = conn.sn_change();
        report.sn_change_interruptions_s.push_back(static_cast<double>(applied) / 1e6);
      });
    }
  }

  for (auto& [id, link] : links) link->start();
  conn.open();

  const EngineStats stats = engine.run_until(SimTime{duration});
  report.events_processed = stats.events_processed;
  report.totals = final_totals;
  report.warnings = conn.take_warnings();

  report.empirical = empirical_availability(report.trace);
  for (const auto& p : paths) {
    const LinkSpec* spec = topo.link_by_id(p.link_id);
    report.analytic_theta.push_back(path_availability(spec->psi_s, spec->gamma_s));
  }
  report.analytic_theta_dc = multi_path_availability(report.analytic_theta);

  // Cross-check: report totals must equal the column sums of the trace.
  std::uint64_t trace_bytes = 0;
  for (const auto& sample : report.trace) {
    for (const auto& pp : sample.paths) {
      trace_bytes += static_cast<std::uint64_t>(
          std::llround(pp.throughput_mbps * static_cast<double>(sample.interval_us) / 8.0));
    }
  }
  if (trace_bytes != report.totals.bytes_delivered) {
    std::ostringstream msg;
    msg << "trace/report mismatch: trace sums to " << trace_bytes << " bytes, report says "
        << report.totals.bytes_delivered;
    throw RuntimeAbort(msg.str());
  }

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    const std::string base = (std::filesystem::path(options.out_dir) / config.name).string();
    if (options.trace_format == TraceFormat::Csv) {
      report.trace_path = base + "-trace.csv";
      write_file(report.trace_path, trace_to_csv(report.trace));
    } else {
      report.trace_path = base + "-trace.json";
      write_file(report.trace_path, trace_to_json(report.trace));
    }
    write_file(base + "-report.json", report_to_json(report));
  }
  return report;
}

std::string trace_to_csv(const std::vector<TraceSample>& trace) {
  std::string out = "t_s,path_id,up,throughput_mbps,active,redundant_mbps\n";
  for (const auto& sample : trace) {
    for (const auto& pp : sample.paths) {
      append_formatted(out, "%.3f,%s,%d,%.6f,%d,%.6f\n", sample.t.seconds(),
                       pp.path_id.c_str(), pp.up ? 1 : 0, pp.throughput_mbps, pp.active ? 1 : 0,
                       pp.redundant_mbps);
    }
  }
  return out;
}

std::string trace_to_json(const std::vector<TraceSample>& trace) {
  json arr = json::array();
  for (const auto& sample : trace) {
    json s;
    s["t_s"] = sample.t.seconds();
    s["aggregate_mbps"] = sample.aggregate_mbps;
    s["paths"] = json::array();
    for (const auto& pp : sample.paths) {
      s["paths"].push_back({{"path_id", pp.path_id},
                            {"up", pp.up},
                            {"throughput_mbps", pp.throughput_mbps},
                            {"active", pp.active},
                            {"redundant_mbps", pp.redundant_mbps}});
    }
    arr.push_back(std::move(s));
  }
  return arr.dump(2) + "\n";
}

std::string report_to_json(const RunReport& report) {
  json root;
  root["config"] = json::parse(serialize_config(report.config));
  root["events_processed"] = report.events_processed;
  root["totals"] = {{"bytes_delivered", report.totals.bytes_delivered},
                    {"segments_sent", report.totals.segments_sent},
                    {"segments_delivered", report.totals.segments_delivered},
                    {"segments_lost", report.totals.segments_lost},
                    {"reorder_drops", report.totals.reorder_drops},
                    {"stall_time_s", report.totals.stall_time_s}};
  json paths = json::array();
  for (std::size_t i = 0; i < report.paths.size(); ++i) {
    const auto& p = report.paths[i];
    paths.push_back({{"id", p.id},
                     {"variant", std::string(to_string(p.variant))},
                     {"bearer", p.bearer_id},
                     {"backup", p.backup},
                     {"cost_per_mb", p.cost_per_mb},
                     {"theta_analytic", report.analytic_theta[i]},
                     {"theta_empirical", report.empirical.theta_path[i]}});
  }
  root["paths"] = std::move(paths);
  root["availability"] = {
      {"analytic", {{"theta_path", report.analytic_theta}, {"theta_dc", report.analytic_theta_dc}}},
      {"empirical",
       {{"theta_path", report.empirical.theta_path}, {"theta_dc", report.empirical.theta_dc}}}};
  root["sn_change_interruptions_s"] = report.sn_change_interruptions_s;
  root["trace_file"] = report.trace_path;
  root["warnings"] = report.warnings;
  return root.dump(2) + "\n";
}

SweepConfig default_sweep_config() {
  SweepConfig sweep;
  for (double theta = 0.5; theta < 0.951; theta += 0.05) sweep.theta_grid.push_back(theta);
  sweep.theta_grid.push_back(0.99);
  return sweep;
}

SweepConfig parse_sweep_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("sweep config is not valid JSON: ") + e.what());
  }
  SweepConfig sweep = default_sweep_config();
  if (root.contains("theta_grid")) {
    sweep.theta_grid.clear();
    for (const auto& v : root.at("theta_grid")) sweep.theta_grid.push_back(v.get<double>());
  }
  if (root.contains("cycle_s")) sweep.cycle_s = root.at("cycle_s").get<double>();
  if (root.contains("duration_s")) sweep.duration_s = root.at("duration_s").get<double>();
  if (root.contains("seed")) sweep.seed = root.at("seed").get<std::uint64_t>();
  if (sweep.theta_grid.empty()) throw ConfigError("sweep theta_grid must be non-empty");
  for (double theta : sweep.theta_grid) {
    if (theta <= 0 || theta >= 1) throw ConfigError("sweep theta values must lie in (0, 1)");
  }
  if (sweep.cycle_s <= 0) throw ConfigError("sweep cycle_s must be > 0");
  if (sweep.duration_s <= 0) throw ConfigError("sweep duration_s must be > 0");
  return sweep;
}

std::vector<SweepRow> run_availability_sweep(const SweepConfig& sweep) {
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < sweep.theta_grid.size(); ++i) {
    const double theta = sweep.theta_grid[i];
    const double psi = theta * sweep.cycle_s;
    const double gamma = (1.0 - theta) * sweep.cycle_s;

    ScenarioConfig cfg;
    cfg.name = "sweep-point";
    cfg.seed = sweep.seed + i;
    cfg.arch_option = ArchOption::Opt3;
    cfg.duration_s = sweep.duration_s;
    cfg.sample_interval_s = 0.5;
    cfg.nodes = {{"ue", NodeRole::UE, RadioTech::None, true, false},
                 {"enb", NodeRole::MN, RadioTech::LTE, true, false},
                 {"gnb", NodeRole::SN, RadioTech::NR, true, false},
                 {"sgw", NodeRole::CoreGateway, RadioTech::None, true, false},
                 {"server", NodeRole::AppServer, RadioTech::None, true, false}};
    LinkSpec mn_link;
    mn_link.id = "mn-path";
    mn_link.node = "enb";
    mn_link.psi_s = psi;
    mn_link.gamma_s = gamma;
    mn_link.capacity_mbps = 50;
    mn_link.delay_ms = 10;
    LinkSpec sn_link = mn_link;
    sn_link.id = "sn-path";
    sn_link.node = "gnb";
    sn_link.delay_ms = 5;
    cfg.links = {mn_link, sn_link};
    cfg.bearers = {{"b-split", BearerKind::MCG_Split, std::nullopt, 9}};
    cfg.mptcp.mode = SchedulerMode::Duplicate;
    cfg.mptcp.termination = TerminationPoint::AtSGW;
    cfg.mptcp.demand_mbps = 0.0;  // availability only, no traffic needed

    const RunReport report = run_scenario(cfg, {});
    SweepRow row;
    row.theta_single = theta;
    row.theta_dc_analytic = dc_availability(theta, theta);
    row.theta_dc_empirical = report.empirical.theta_dc;
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "theta_single,theta_dc_analytic,theta_dc_empirical\n";
  for (const auto& row : rows) {
    append_formatted(out, "%.6f,%.6f,%.6f\n", row.theta_single, row.theta_dc_analytic,
                     row.theta_dc_empirical);
  }
  return out;
}

}  // namespace dcsim
