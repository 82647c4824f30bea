#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcsim/topology.hpp"
#include "dcsim/types.hpp"

namespace dcsim {

struct FixedDelays {
  double core_ms{5};      // gateway <-> radio node
  double backhaul_ms{10}; // MN <-> SN (Xx/Xn), fixed delay, infinite capacity
  double epdg_ms{10};     // extra hop for untrusted WLAN access
  double wt_ms{2};        // anchor <-> WLAN termination (0 when collocated)
};

struct MptcpSettings {
  SchedulerMode mode{SchedulerMode::Aggregate};
  TerminationPoint termination{TerminationPoint::AtSGW};
  double detection_latency_ms{200};
  double t_interrupt_ms{50};  // SN-change interruption when terminated at SGW
  int segment_bytes{1500};
  int reorder_capacity{1024};
  int subflow_window{32};  // per-sub-flow send queue cap, segments
  // Application demand; absent means a saturated sender, 0 means no traffic.
  std::optional<double> demand_mbps;
};

struct ScriptedEvent {
  double at_s{0};
  std::string kind;  // "link-down" | "link-up" | "sn-change"
  std::string link;  // required for link events
};

struct ScenarioConfig {
  std::string name;
  std::uint64_t seed{1};
  ArchOption arch_option{ArchOption::Opt2_SA_NR};
  double duration_s{0};
  double sample_interval_s{0.5};
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::vector<BearerSpec> bearers;
  WlanAccess wlan_access{WlanAccess::None};
  FixedDelays delays;
  int lwaap_overhead_bytes{3};
  MptcpSettings mptcp;
  std::vector<ScriptedEvent> scripted_events;
};

/// Parse a scenario from JSON text. Comments (// and /* */) are accepted.
/// Throws ConfigError with the offending field path.
ScenarioConfig parse_config(const std::string& text);

/// Canonical serialization: keys sorted, two-space indent, trailing newline.
/// serialize(parse(serialize(c))) is byte-identical to serialize(c).
std::string serialize_config(const ScenarioConfig& config);

/// Structural checks that do not need the topology (durations, event times,
/// reference integrity). build_topology() performs the option/bearer rules.
void validate_config(const ScenarioConfig& config);

struct ScenarioEntry {
  std::string name;
  std::string description;
  bool is_sweep{false};
  std::string config_json;  // empty for sweep-style entries
};

/// Canned experiment catalog served by the CLI.
const std::vector<ScenarioEntry>& scenario_catalog();
const ScenarioEntry* find_scenario(const std::string& name);

}  // namespace dcsim
