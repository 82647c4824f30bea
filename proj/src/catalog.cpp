#include "dcsim/scenario.hpp"

namespace dcsim {

namespace {

const char* kFig5bAggregation = R"json({
  // LTE as the regular path, Wi-Fi appearing mid-run and later failing.
  // Aggregate mode: throughput steps up when Wi-Fi joins and falls back to
  // single-path LTE when it fails.
  "name": "fig5b-aggregation",
  "seed": 7,
  "arch_option": "Opt5",
  "duration_s": 60,
  "sample_interval_s": 0.5,
  "nodes": [
    {"id": "ue", "role": "UE", "ipv6_multihoming": true},
    {"id": "enb", "role": "MN", "radio": "eLTE"},
    {"id": "pgw", "role": "CoreGateway"},
    {"id": "server", "role": "AppServer"},
    {"id": "wifi-ap", "role": "WlanTermination", "radio": "WiFi"}
  ],
  "links": [
    {"id": "lte", "node": "enb", "psi_s": 1000, "gamma_s": 0,
     "capacity_mbps": 50, "delay_ms": 10, "loss": 0},
    {"id": "wifi", "node": "wifi-ap", "psi_s": 1000, "gamma_s": 0,
     "capacity_mbps": 30, "delay_ms": 5, "loss": 0, "initially_up": false}
  ],
  "bearers": [{"id": "b-mcg", "kind": "MCG"}],
  "wlan_access": "TrustedViaCore",
  "mptcp": {"mode": "Aggregate", "termination": "EndToEnd_IPv6MultiHoming",
            "detection_latency_ms": 200},
  "scripted_events": [
    {"at_s": 10, "kind": "link-up", "link": "wifi"},
    {"at_s": 40, "kind": "link-down", "link": "wifi"}
  ]
})json";

const char* kFig5bBackup = R"json({
  // WiGig as the regular path with Wi-Fi on standby. Backup mode: Wi-Fi
  // carries traffic only while WiGig is down and goes idle again once the
  // WiGig link reactivates.
  "name": "fig5b-backup",
  "seed": 7,
  "arch_option": "Opt5",
  "duration_s": 60,
  "sample_interval_s": 0.5,
  "nodes": [
    {"id": "ue", "role": "UE", "ipv6_multihoming": true},
    {"id": "pgw", "role": "CoreGateway"},
    {"id": "server", "role": "AppServer"},
    {"id": "wigig-ap", "role": "WlanTermination", "radio": "WiGig"},
    {"id": "wifi-ap", "role": "WlanTermination", "radio": "WiFi"}
  ],
  "links": [
    {"id": "wigig", "node": "wigig-ap", "psi_s": 1000, "gamma_s": 0,
     "capacity_mbps": 200, "delay_ms": 1, "loss": 0},
    {"id": "wifi", "node": "wifi-ap", "psi_s": 1000, "gamma_s": 0,
     "capacity_mbps": 30, "delay_ms": 2, "loss": 0, "backup": true}
  ],
  "bearers": [],
  "wlan_access": "TrustedViaCore",
  "mptcp": {"mode": "Backup", "termination": "EndToEnd_IPv6MultiHoming",
            "detection_latency_ms": 200},
  "scripted_events": [
    {"at_s": 20, "kind": "link-down", "link": "wigig"},
    {"at_s": 40, "kind": "link-up", "link": "wigig"}
  ]
})json";

const char* kOpt3xScgSplit = R"json({
  // SCG split bearer: user-plane data enters at the NR SN and is split
  // across the SN radio leg and the backhaul leg towards the LTE MN.
  // Both radio links follow stochastic up/down renewal processes.
  "name": "opt3x-scg-split",
  "seed": 11,
  "arch_option": "Opt3x",
  "duration_s": 60,
  "sample_interval_s": 0.5,
  "nodes": [
    {"id": "ue", "role": "UE"},
    {"id": "enb", "role": "MN", "radio": "LTE"},
    {"id": "gnb", "role": "SN", "radio": "NR"},
    {"id": "sgw", "role": "CoreGateway"},
    {"id": "server", "role": "AppServer"}
  ],
  "links": [
    {"id": "lte", "node": "enb", "psi_s": 9, "gamma_s": 1,
     "distribution": "Exponential", "capacity_mbps": 50, "delay_ms": 10, "loss": 0},
    {"id": "nr", "node": "gnb", "psi_s": 9, "gamma_s": 1,
     "distribution": "Exponential", "capacity_mbps": 80, "delay_ms": 5, "loss": 0}
  ],
  "bearers": [{"id": "b-scg-split", "kind": "SCG_Split"}],
  "mptcp": {"mode": "Aggregate", "termination": "AtSGW"}
})json";

const char* kSnChange = R"json({
  // Secondary-node change with the MPTCP function at the gateway: the SN
  // sub-flow is interrupted for t_interrupt_ms. Re-run with termination
  // AtMN to see the interruption disappear.
  "name": "sn-change-atsgw-vs-atmn",
  "seed": 5,
  "arch_option": "Opt3x",
  "duration_s": 40,
  "sample_interval_s": 0.5,
  "nodes": [
    {"id": "ue", "role": "UE"},
    {"id": "enb", "role": "MN", "radio": "LTE"},
    {"id": "gnb", "role": "SN", "radio": "NR"},
    {"id": "sgw", "role": "CoreGateway"},
    {"id": "server", "role": "AppServer"}
  ],
  "links": [
    {"id": "lte", "node": "enb", "psi_s": 1000, "gamma_s": 0,
     "capacity_mbps": 50, "delay_ms": 10, "loss": 0},
    {"id": "nr", "node": "gnb", "psi_s": 1000, "gamma_s": 0,
     "capacity_mbps": 80, "delay_ms": 5, "loss": 0}
  ],
  "bearers": [{"id": "b-scg-split", "kind": "SCG_Split"}],
  "mptcp": {"mode": "Aggregate", "termination": "AtSGW", "t_interrupt_ms": 2000},
  "scripted_events": [{"at_s": 20, "kind": "sn-change"}]
})json";

const char* kDuplicateReliability = R"json({
  // Duplicate mode over an MCG split bearer: every segment is sent on both
  // legs, so the application stream survives any single-path outage.
  "name": "duplicate-reliability",
  "seed": 3,
  "arch_option": "Opt3",
  "duration_s": 1000,
  "sample_interval_s": 0.5,
  "nodes": [
    {"id": "ue", "role": "UE"},
    {"id": "enb", "role": "MN", "radio": "LTE"},
    {"id": "gnb", "role": "SN", "radio": "NR"},
    {"id": "sgw", "role": "CoreGateway"},
    {"id": "server", "role": "AppServer"}
  ],
  "links": [
    {"id": "lte", "node": "enb", "psi_s": 9, "gamma_s": 1,
     "distribution": "Exponential", "capacity_mbps": 50, "delay_ms": 10, "loss": 0},
    {"id": "nr", "node": "gnb", "psi_s": 9, "gamma_s": 1,
     "distribution": "Exponential", "capacity_mbps": 80, "delay_ms": 5, "loss": 0}
  ],
  "bearers": [{"id": "b-mcg-split", "kind": "MCG_Split"}],
  "mptcp": {"mode": "Duplicate", "termination": "AtSGW", "demand_mbps": 2}
})json";

}  // namespace

const std::vector<ScenarioEntry>& scenario_catalog() {
  static const std::vector<ScenarioEntry> catalog = {
      {"fig5a-sweep",
       "Availability sweep: analytic 1-(1-theta)^2 vs Monte-Carlo estimate from "
       "Duplicate-mode dual-path runs over a theta grid.",
       true, ""},
      {"fig5b-aggregation",
       "Aggregation-mode throughput timeline over LTE + Wi-Fi: step up when Wi-Fi "
       "appears, fall back to single-path LTE when it fails.",
       false, kFig5bAggregation},
      {"fig5b-backup",
       "Backup-mode timeline over WiGig + standby Wi-Fi: automatic switch to Wi-Fi "
       "on WiGig failure and reactivation of WiGig on recovery.",
       false, kFig5bBackup},
      {"opt3x-scg-split",
       "SCG split bearer under Opt3x with stochastic link outages; both legs enter "
       "at the NR SN.",
       false, kOpt3xScgSplit},
      {"sn-change-atsgw-vs-atmn",
       "Secondary-node change trade-off: gateway-terminated MPTCP suffers a "
       "t_interrupt gap on the SN path, MN-terminated MPTCP does not.",
       false, kSnChange},
      {"duplicate-reliability",
       "Duplicate-mode redundant transmission over both DC legs of an MCG split "
       "bearer with renewal-process outages.",
       false, kDuplicateReliability},
  };
  return catalog;
}

const ScenarioEntry* find_scenario(const std::string& name) {
  for (const auto& entry : scenario_catalog()) {
    if (entry.name == name) return &entry;
  }
  return nullptr;
}

}  // namespace dcsim
