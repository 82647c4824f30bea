#pragma once

#include <string>
#include <string_view>

namespace dcsim {

/// 3GPP architecture options the topology layer can represent.
enum class ArchOption { Opt2_SA_NR, Opt3, Opt3A, Opt3x, Opt4, Opt4A, Opt5, Opt7, Opt7A, Opt7x };

enum class NodeRole { UE, MN, SN, CoreGateway, AppServer, WlanTermination };

enum class RadioTech { None, LTE, ELTE, NR, WiFi, WiGig };

enum class BearerKind { MCG, SCG, MCG_Split, SCG_Split, SwitchedLWA, SplitLWA };

enum class SplitPoint { None, AtGateway_PacketLevel, AtMN, AtSN };

enum class PathVariant {
  CellularMN,
  CellularSN,
  WlanViaCoreTrusted,
  WlanViaCoreUntrusted,
  WlanViaAnchor_eLWA,
};

/// How (and whether) a WLAN termination is wired into the user plane.
enum class WlanAccess { None, TrustedViaCore, UntrustedViaCore, ElwaCollocated, ElwaNonCollocated };

enum class PhaseDist { Exponential, Deterministic };

/// Where the downlink TCP flow is terminated and sub-flows originate.
enum class TerminationPoint { AtSGW, AtMN, EndToEnd_IPv6MultiHoming };

enum class SchedulerMode { Aggregate, Backup, Duplicate };

enum class SubflowPriority { Regular, Backup };

enum class SubflowState { Establishing, Active, Degraded, Closed };

std::string_view to_string(ArchOption v);
std::string_view to_string(NodeRole v);
std::string_view to_string(RadioTech v);
std::string_view to_string(BearerKind v);
std::string_view to_string(SplitPoint v);
std::string_view to_string(PathVariant v);
std::string_view to_string(WlanAccess v);
std::string_view to_string(PhaseDist v);
std::string_view to_string(TerminationPoint v);
std::string_view to_string(SchedulerMode v);
std::string_view to_string(SubflowPriority v);
std::string_view to_string(SubflowState v);

// Parsers throw ConfigError naming the field and the accepted values.
ArchOption parse_arch_option(const std::string& s);
NodeRole parse_node_role(const std::string& s);
RadioTech parse_radio_tech(const std::string& s);
BearerKind parse_bearer_kind(const std::string& s);
SplitPoint parse_split_point(const std::string& s);
WlanAccess parse_wlan_access(const std::string& s);
PhaseDist parse_phase_dist(const std::string& s);
TerminationPoint parse_termination(const std::string& s);
SchedulerMode parse_scheduler_mode(const std::string& s);

/// True for the dual-connectivity options (an MN plus an SN).
bool is_dc_option(ArchOption v);
/// True for options anchored at the EPC (Option 3 family).
bool is_epc_option(ArchOption v);

}  // namespace dcsim
