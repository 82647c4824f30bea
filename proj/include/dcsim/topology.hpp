#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcsim/types.hpp"

namespace dcsim {

struct ScenarioConfig;

struct NodeSpec {
  std::string id;
  NodeRole role{NodeRole::UE};
  RadioTech radio{RadioTech::None};
  // UE capability flags. multipath_api models the upper-layer awareness of
  // multiple carriers needed for single-IP MPTCP over DC; ipv6_multihoming
  // models two independently routable prefixes at the UE.
  bool multipath_api{true};
  bool ipv6_multihoming{false};
};

struct LinkSpec {
  std::string id;
  std::string node;  // radio node (MN/SN/WlanTermination) this link hangs off
  double psi_s{0};   // mean uptime, seconds
  double gamma_s{0}; // mean downtime, seconds; 0 means the link never fails
  PhaseDist distribution{PhaseDist::Exponential};
  double capacity_mbps{0};
  double delay_ms{0};  // one-way propagation delay
  double loss{0};      // per-packet loss probability while up
  bool initially_up{true};  // false: held down until a scripted link-up
  bool backup{false};       // sub-flows on this link get Backup priority
  double cost_per_mb{0};    // reported in traces, never used for scheduling
};

struct BearerSpec {
  std::string id;
  BearerKind kind{BearerKind::MCG};
  std::optional<SplitPoint> split_point;  // inferred from kind/option when absent
  int qos_class{9};                       // DRB -> QoS marking; trace labeling only
};

struct Hop {
  std::string name;
  double delay_ms{0};
};

/// One physical route a bearer's (or WLAN access) traffic may take. The radio
/// link contributes the variable part (capacity, delay, loss, outages); the
/// fixed hops in front of it contribute delay only.
struct PathDescriptor {
  std::string id;  // equals the radio link id; unique per connection
  PathVariant variant{PathVariant::CellularMN};
  std::string link_id;
  std::vector<Hop> hops;  // fixed hops traversed before the radio link
  int overhead_bytes{0};  // per-PDU encapsulation (LWAAP) on WLAN legs
  std::string bearer_id;  // empty for non-bearer WLAN-access paths
  bool backup{false};
  double cost_per_mb{0};
  double backhaul_delay_ms{0};  // MN<->SN hop delay if the path crosses it

  double fixed_delay_ms() const;
};

struct ResolvedBearer {
  BearerSpec spec;
  SplitPoint split_point{SplitPoint::None};
  std::vector<PathDescriptor> paths;
};

/// Immutable node/link/bearer graph with every bearer resolved to its
/// physical paths. Built once per scenario; only sim-core event handlers
/// mutate the runtime state layered on top of it.
struct Topology {
  ArchOption option{ArchOption::Opt2_SA_NR};
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::vector<ResolvedBearer> bearers;
  std::vector<PathDescriptor> wlan_paths;  // trusted/untrusted WLAN via core

  const NodeSpec* node_by_role(NodeRole role) const;
  const LinkSpec* link_by_id(const std::string& id) const;

  /// Paths the MPTCP connection spans: every bearer path plus every
  /// WLAN-access path, in declaration order, de-duplicated by radio link.
  std::vector<PathDescriptor> connection_paths() const;
};

/// Validates the scenario against the option/bearer compatibility rules and
/// resolves bearer paths. Throws ConfigError naming the violated constraint.
Topology build_topology(const ScenarioConfig& config);

/// Ordered path list for one bearer. Split bearers yield exactly two paths,
/// non-split bearers exactly one. Throws ConfigError on unknown bearer id.
const std::vector<PathDescriptor>& paths_for_bearer(const Topology& topo,
                                                    const std::string& bearer_id);

}  // namespace dcsim
