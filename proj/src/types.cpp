#include "dcsim/types.hpp"

#include <array>
#include <sstream>
#include <utility>

#include "dcsim/errors.hpp"

namespace dcsim {
namespace {

template <typename E, std::size_t N>
std::string_view lookup(const std::array<std::pair<E, std::string_view>, N>& table, E v) {
  for (const auto& [e, name] : table) {
    if (e == v) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
E parse(const std::array<std::pair<E, std::string_view>, N>& table, const std::string& s,
        std::string_view what) {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  std::ostringstream msg;
  msg << "invalid " << what << " '" << s << "'; expected one of:";
  for (const auto& [e, name] : table) msg << " " << name;
  throw ConfigError(msg.str());
}

constexpr std::array<std::pair<ArchOption, std::string_view>, 10> kArchOptions{{
    {ArchOption::Opt2_SA_NR, "Opt2_SA_NR"},
    {ArchOption::Opt3, "Opt3"},
    {ArchOption::Opt3A, "Opt3A"},
    {ArchOption::Opt3x, "Opt3x"},
    {ArchOption::Opt4, "Opt4"},
    {ArchOption::Opt4A, "Opt4A"},
    {ArchOption::Opt5, "Opt5"},
    {ArchOption::Opt7, "Opt7"},
    {ArchOption::Opt7A, "Opt7A"},
    {ArchOption::Opt7x, "Opt7x"},
}};

constexpr std::array<std::pair<NodeRole, std::string_view>, 6> kNodeRoles{{
    {NodeRole::UE, "UE"},
    {NodeRole::MN, "MN"},
    {NodeRole::SN, "SN"},
    {NodeRole::CoreGateway, "CoreGateway"},
    {NodeRole::AppServer, "AppServer"},
    {NodeRole::WlanTermination, "WlanTermination"},
}};

constexpr std::array<std::pair<RadioTech, std::string_view>, 6> kRadioTechs{{
    {RadioTech::None, "None"},
    {RadioTech::LTE, "LTE"},
    {RadioTech::ELTE, "eLTE"},
    {RadioTech::NR, "NR"},
    {RadioTech::WiFi, "WiFi"},
    {RadioTech::WiGig, "WiGig"},
}};

constexpr std::array<std::pair<BearerKind, std::string_view>, 6> kBearerKinds{{
    {BearerKind::MCG, "MCG"},
    {BearerKind::SCG, "SCG"},
    {BearerKind::MCG_Split, "MCG_Split"},
    {BearerKind::SCG_Split, "SCG_Split"},
    {BearerKind::SwitchedLWA, "SwitchedLWA"},
    {BearerKind::SplitLWA, "SplitLWA"},
}};

constexpr std::array<std::pair<SplitPoint, std::string_view>, 4> kSplitPoints{{
    {SplitPoint::None, "None"},
    {SplitPoint::AtGateway_PacketLevel, "AtGateway_PacketLevel"},
    {SplitPoint::AtMN, "AtMN"},
    {SplitPoint::AtSN, "AtSN"},
}};

constexpr std::array<std::pair<PathVariant, std::string_view>, 5> kPathVariants{{
    {PathVariant::CellularMN, "CellularMN"},
    {PathVariant::CellularSN, "CellularSN"},
    {PathVariant::WlanViaCoreTrusted, "WlanViaCoreTrusted"},
    {PathVariant::WlanViaCoreUntrusted, "WlanViaCoreUntrusted"},
    {PathVariant::WlanViaAnchor_eLWA, "WlanViaAnchor_eLWA"},
}};

constexpr std::array<std::pair<WlanAccess, std::string_view>, 5> kWlanAccess{{
    {WlanAccess::None, "None"},
    {WlanAccess::TrustedViaCore, "TrustedViaCore"},
    {WlanAccess::UntrustedViaCore, "UntrustedViaCore"},
    {WlanAccess::ElwaCollocated, "ElwaCollocated"},
    {WlanAccess::ElwaNonCollocated, "ElwaNonCollocated"},
}};

constexpr std::array<std::pair<PhaseDist, std::string_view>, 2> kPhaseDists{{
    {PhaseDist::Exponential, "Exponential"},
    {PhaseDist::Deterministic, "Deterministic"},
}};

constexpr std::array<std::pair<TerminationPoint, std::string_view>, 3> kTerminations{{
    {TerminationPoint::AtSGW, "AtSGW"},
    {TerminationPoint::AtMN, "AtMN"},
    {TerminationPoint::EndToEnd_IPv6MultiHoming, "EndToEnd_IPv6MultiHoming"},
}};

constexpr std::array<std::pair<SchedulerMode, std::string_view>, 3> kSchedulerModes{{
    {SchedulerMode::Aggregate, "Aggregate"},
    {SchedulerMode::Backup, "Backup"},
    {SchedulerMode::Duplicate, "Duplicate"},
}};

constexpr std::array<std::pair<SubflowPriority, std::string_view>, 2> kPriorities{{
    {SubflowPriority::Regular, "Regular"},
    {SubflowPriority::Backup, "Backup"},
}};

constexpr std::array<std::pair<SubflowState, std::string_view>, 4> kSubflowStates{{
    {SubflowState::Establishing, "Establishing"},
    {SubflowState::Active, "Active"},
    {SubflowState::Degraded, "Degraded"},
    {SubflowState::Closed, "Closed"},
}};

}  // namespace

std::string_view to_string(ArchOption v) { return lookup(kArchOptions, v); }
std::string_view to_string(NodeRole v) { return lookup(kNodeRoles, v); }
std::string_view to_string(RadioTech v) { return lookup(kRadioTechs, v); }
std::string_view to_string(BearerKind v) { return lookup(kBearerKinds, v); }
std::string_view to_string(SplitPoint v) { return lookup(kSplitPoints, v); }
std::string_view to_string(PathVariant v) { return lookup(kPathVariants, v); }
std::string_view to_string(WlanAccess v) { return lookup(kWlanAccess, v); }
std::string_view to_string(PhaseDist v) { return lookup(kPhaseDists, v); }
std::string_view to_string(TerminationPoint v) { return lookup(kTerminations, v); }
std::string_view to_string(SchedulerMode v) { return lookup(kSchedulerModes, v); }
std::string_view to_string(SubflowPriority v) { return lookup(kPriorities, v); }
std::string_view to_string(SubflowState v) { return lookup(kSubflowStates, v); }

ArchOption parse_arch_option(const std::string& s) { return parse(kArchOptions, s, "arch_option"); }
NodeRole parse_node_role(const std::string& s) { return parse(kNodeRoles, s, "node role"); }
RadioTech parse_radio_tech(const std::string& s) { return parse(kRadioTechs, s, "radio tech"); }
BearerKind parse_bearer_kind(const std::string& s) { return parse(kBearerKinds, s, "bearer kind"); }
SplitPoint parse_split_point(const std::string& s) { return parse(kSplitPoints, s, "split point"); }
WlanAccess parse_wlan_access(const std::string& s) { return parse(kWlanAccess, s, "wlan_access"); }
PhaseDist parse_phase_dist(const std::string& s) { return parse(kPhaseDists, s, "distribution"); }
TerminationPoint parse_termination(const std::string& s) {
  return parse(kTerminations, s, "termination");
}
SchedulerMode parse_scheduler_mode(const std::string& s) {
  return parse(kSchedulerModes, s, "scheduler mode");
}

bool is_dc_option(ArchOption v) {
  switch (v) {
    case ArchOption::Opt3:
    case ArchOption::Opt3A:
    case ArchOption::Opt3x:
    case ArchOption::Opt4:
    case ArchOption::Opt4A:
    case ArchOption::Opt7:
    case ArchOption::Opt7A:
    case ArchOption::Opt7x:
      return true;
    default:
      return false;
  }
}

bool is_epc_option(ArchOption v) {
  return v == ArchOption::Opt3 || v == ArchOption::Opt3A || v == ArchOption::Opt3x;
}

}  // namespace dcsim
