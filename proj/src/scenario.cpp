#include "dcsim/scenario.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

#include "dcsim/errors.hpp"

namespace dcsim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    fail("missing required field '" + path + key + "'");
  }
  return obj.at(key);
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail("field '" + path + "' must be a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail("field '" + path + "' must be a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail("field '" + path + "' must be a boolean");
  return v.get<bool>();
}

double opt_number(const json& obj, const std::string& key, double def, const std::string& path) {
  if (!obj.contains(key)) return def;
  return as_number(obj.at(key), path + key);
}

bool opt_bool(const json& obj, const std::string& key, bool def, const std::string& path) {
  if (!obj.contains(key)) return def;
  return as_bool(obj.at(key), path + key);
}

NodeSpec parse_node(const json& j, const std::string& path) {
  NodeSpec n;
  n.id = as_string(require(j, "id", path), path + "id");
  n.role = parse_node_role(as_string(require(j, "role", path), path + "role"));
  if (j.contains("radio")) {
    n.radio = parse_radio_tech(as_string(j.at("radio"), path + "radio"));
  }
  n.multipath_api = opt_bool(j, "multipath_api", true, path);
  n.ipv6_multihoming = opt_bool(j, "ipv6_multihoming", false, path);
  return n;
}

LinkSpec parse_link(const json& j, const std::string& path) {
  LinkSpec l;
  l.id = as_string(require(j, "id", path), path + "id");
  l.node = as_string(require(j, "node", path), path + "node");
  l.psi_s = as_number(require(j, "psi_s", path), path + "psi_s");
  l.gamma_s = opt_number(j, "gamma_s", 0.0, path);
  if (j.contains("distribution")) {
    l.distribution = parse_phase_dist(as_string(j.at("distribution"), path + "distribution"));
  }
  l.capacity_mbps = as_number(require(j, "capacity_mbps", path), path + "capacity_mbps");
  l.delay_ms = opt_number(j, "delay_ms", 0.0, path);
  l.loss = opt_number(j, "loss", 0.0, path);
  l.initially_up = opt_bool(j, "initially_up", true, path);
  l.backup = opt_bool(j, "backup", false, path);
  l.cost_per_mb = opt_number(j, "cost_per_mb", 0.0, path);
  return l;
}

BearerSpec parse_bearer(const json& j, const std::string& path) {
  BearerSpec b;
  b.id = as_string(require(j, "id", path), path + "id");
  b.kind = parse_bearer_kind(as_string(require(j, "kind", path), path + "kind"));
  if (j.contains("split_point")) {
    b.split_point = parse_split_point(as_string(j.at("split_point"), path + "split_point"));
  }
  b.qos_class = static_cast<int>(opt_number(j, "qos_class", 9, path));
  return b;
}

json node_to_json(const NodeSpec& n) {
  json j;
  j["id"] = n.id;
  j["role"] = std::string(to_string(n.role));
  j["radio"] = std::string(to_string(n.radio));
  if (n.role == NodeRole::UE) {
    j["multipath_api"] = n.multipath_api;
    j["ipv6_multihoming"] = n.ipv6_multihoming;
  }
  return j;
}

json link_to_json(const LinkSpec& l) {
  json j;
  j["id"] = l.id;
  j["node"] = l.node;
  j["psi_s"] = l.psi_s;
  j["gamma_s"] = l.gamma_s;
  j["distribution"] = std::string(to_string(l.distribution));
  j["capacity_mbps"] = l.capacity_mbps;
  j["delay_ms"] = l.delay_ms;
  j["loss"] = l.loss;
  j["initially_up"] = l.initially_up;
  j["backup"] = l.backup;
  j["cost_per_mb"] = l.cost_per_mb;
  return j;
}

json bearer_to_json(const BearerSpec& b) {
  json j;
  j["id"] = b.id;
  j["kind"] = std::string(to_string(b.kind));
  if (b.split_point) j["split_point"] = std::string(to_string(*b.split_point));
  j["qos_class"] = b.qos_class;
  return j;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("config root must be an object");

  ScenarioConfig cfg;
  cfg.name = root.contains("name") ? as_string(root.at("name"), "name") : "scenario";
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned() && !root.at("seed").is_number_integer()) {
      fail("field 'seed' must be an integer");
    }
    cfg.seed = root.at("seed").get<std::uint64_t>();
  }
  cfg.arch_option = parse_arch_option(as_string(require(root, "arch_option", ""), "arch_option"));
  cfg.duration_s = as_number(require(root, "duration_s", ""), "duration_s");
  cfg.sample_interval_s = opt_number(root, "sample_interval_s", 0.5, "");

  for (const auto& [idx, item] : require(root, "nodes", "").items()) {
    cfg.nodes.push_back(parse_node(item, "nodes[" + idx + "]."));
  }
  for (const auto& [idx, item] : require(root, "links", "").items()) {
    cfg.links.push_back(parse_link(item, "links[" + idx + "]."));
  }
  if (root.contains("bearers")) {
    for (const auto& [idx, item] : root.at("bearers").items()) {
      cfg.bearers.push_back(parse_bearer(item, "bearers[" + idx + "]."));
    }
  }
  if (root.contains("wlan_access")) {
    cfg.wlan_access = parse_wlan_access(as_string(root.at("wlan_access"), "wlan_access"));
  }
  if (root.contains("delays_ms")) {
    const json& d = root.at("delays_ms");
    cfg.delays.core_ms = opt_number(d, "core", cfg.delays.core_ms, "delays_ms.");
    cfg.delays.backhaul_ms = opt_number(d, "backhaul", cfg.delays.backhaul_ms, "delays_ms.");
    cfg.delays.epdg_ms = opt_number(d, "epdg", cfg.delays.epdg_ms, "delays_ms.");
    cfg.delays.wt_ms = opt_number(d, "wt", cfg.delays.wt_ms, "delays_ms.");
  }
  cfg.lwaap_overhead_bytes =
      static_cast<int>(opt_number(root, "lwaap_overhead_bytes", 3, ""));

  if (root.contains("mptcp")) {
    const json& m = root.at("mptcp");
    if (m.contains("mode")) {
      cfg.mptcp.mode = parse_scheduler_mode(as_string(m.at("mode"), "mptcp.mode"));
    }
    if (m.contains("termination")) {
      cfg.mptcp.termination =
          parse_termination(as_string(m.at("termination"), "mptcp.termination"));
    }
    cfg.mptcp.detection_latency_ms =
        opt_number(m, "detection_latency_ms", cfg.mptcp.detection_latency_ms, "mptcp.");
    cfg.mptcp.t_interrupt_ms =
        opt_number(m, "t_interrupt_ms", cfg.mptcp.t_interrupt_ms, "mptcp.");
    cfg.mptcp.segment_bytes =
        static_cast<int>(opt_number(m, "segment_bytes", cfg.mptcp.segment_bytes, "mptcp."));
    cfg.mptcp.reorder_capacity =
        static_cast<int>(opt_number(m, "reorder_capacity", cfg.mptcp.reorder_capacity, "mptcp."));
    cfg.mptcp.subflow_window =
        static_cast<int>(opt_number(m, "subflow_window", cfg.mptcp.subflow_window, "mptcp."));
    if (m.contains("demand_mbps")) {
      cfg.mptcp.demand_mbps = as_number(m.at("demand_mbps"), "mptcp.demand_mbps");
    }
  }

  if (root.contains("scripted_events")) {
    for (const auto& [idx, item] : root.at("scripted_events").items()) {
      const std::string path = "scripted_events[" + idx + "].";
      ScriptedEvent ev;
      ev.at_s = as_number(require(item, "at_s", path), path + "at_s");
      ev.kind = as_string(require(item, "kind", path), path + "kind");
      if (item.contains("link")) ev.link = as_string(item.at("link"), path + "link");
      cfg.scripted_events.push_back(std::move(ev));
    }
  }
  return cfg;
}

std::string serialize_config(const ScenarioConfig& cfg) {
  json root;
  root["name"] = cfg.name;
  root["seed"] = cfg.seed;
  root["arch_option"] = std::string(to_string(cfg.arch_option));
  root["duration_s"] = cfg.duration_s;
  root["sample_interval_s"] = cfg.sample_interval_s;
  root["nodes"] = json::array();
  for (const auto& n : cfg.nodes) root["nodes"].push_back(node_to_json(n));
  root["links"] = json::array();
  for (const auto& l : cfg.links) root["links"].push_back(link_to_json(l));
  root["bearers"] = json::array();
  for (const auto& b : cfg.bearers) root["bearers"].push_back(bearer_to_json(b));
  root["wlan_access"] = std::string(to_string(cfg.wlan_access));
  root["delays_ms"] = {{"core", cfg.delays.core_ms},
                       {"backhaul", cfg.delays.backhaul_ms},
                       {"epdg", cfg.delays.epdg_ms},
                       {"wt", cfg.delays.wt_ms}};
  root["lwaap_overhead_bytes"] = cfg.lwaap_overhead_bytes;
  json m;
  m["mode"] = std::string(to_string(cfg.mptcp.mode));
  m["termination"] = std::string(to_string(cfg.mptcp.termination));
  m["detection_latency_ms"] = cfg.mptcp.detection_latency_ms;
  m["t_interrupt_ms"] = cfg.mptcp.t_interrupt_ms;
  m["segment_bytes"] = cfg.mptcp.segment_bytes;
  m["reorder_capacity"] = cfg.mptcp.reorder_capacity;
  m["subflow_window"] = cfg.mptcp.subflow_window;
  if (cfg.mptcp.demand_mbps) m["demand_mbps"] = *cfg.mptcp.demand_mbps;
  root["mptcp"] = std::move(m);
  root["scripted_events"] = json::array();
  for (const auto& ev : cfg.scripted_events) {
    json e;
    e["at_s"] = ev.at_s;
    e["kind"] = ev.kind;
    if (!ev.link.empty()) e["link"] = ev.link;
    root["scripted_events"].push_back(std::move(e));
  }
  return root.dump(2) + "\n";
}

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.duration_s <= 0) fail("duration_s must be > 0");
  if (cfg.sample_interval_s <= 0) fail("sample_interval_s must be > 0");

  std::set<std::string> ids;
  for (const auto& n : cfg.nodes) {
    if (n.id.empty()) fail("node id must be non-empty");
    if (!ids.insert(n.id).second) fail("duplicate node id '" + n.id + "'");
  }
  std::set<std::string> link_ids;
  for (const auto& l : cfg.links) {
    const std::string where = "link '" + l.id + "': ";
    if (l.id.empty()) fail("link id must be non-empty");
    if (!link_ids.insert(l.id).second) fail("duplicate link id '" + l.id + "'");
    if (l.psi_s <= 0) fail(where + "psi_s must be > 0");
    if (l.gamma_s < 0) fail(where + "gamma_s must be >= 0");
    if (l.capacity_mbps <= 0) fail(where + "capacity_mbps must be > 0");
    if (l.delay_ms < 0) fail(where + "delay_ms must be >= 0");
    if (l.loss < 0 || l.loss > 1) fail(where + "loss must lie in [0, 1]");
  }
  std::set<std::string> bearer_ids;
  for (const auto& b : cfg.bearers) {
    if (b.id.empty()) fail("bearer id must be non-empty");
    if (!bearer_ids.insert(b.id).second) fail("duplicate bearer id '" + b.id + "'");
  }

  if (cfg.delays.core_ms < 0 || cfg.delays.backhaul_ms < 0 || cfg.delays.epdg_ms < 0 ||
      cfg.delays.wt_ms < 0) {
    fail("delays_ms values must be >= 0");
  }
  if (cfg.lwaap_overhead_bytes < 0) fail("lwaap_overhead_bytes must be >= 0");

  const auto& m = cfg.mptcp;
  if (m.detection_latency_ms < 0) fail("mptcp.detection_latency_ms must be >= 0");
  if (m.t_interrupt_ms < 0) fail("mptcp.t_interrupt_ms must be >= 0");
  if (m.segment_bytes <= 0) fail("mptcp.segment_bytes must be > 0");
  if (m.reorder_capacity <= 0) fail("mptcp.reorder_capacity must be > 0");
  if (m.subflow_window <= 0) fail("mptcp.subflow_window must be > 0");
  if (m.demand_mbps && *m.demand_mbps < 0) fail("mptcp.demand_mbps must be >= 0");

  for (const auto& ev : cfg.scripted_events) {
    if (ev.kind != "link-down" && ev.kind != "link-up" && ev.kind != "sn-change") {
      fail("scripted event kind '" + ev.kind + "' must be link-down, link-up or sn-change");
    }
    if (ev.at_s < 0 || ev.at_s > cfg.duration_s) {
      fail("scripted event time must lie within [0, duration_s]");
    }
    if (ev.kind != "sn-change") {
      if (ev.link.empty()) fail("scripted " + ev.kind + " event requires a link id");
      if (!link_ids.contains(ev.link)) {
        fail("scripted event references unknown link '" + ev.link + "'");
      }
    }
  }
}

}  // namespace dcsim
