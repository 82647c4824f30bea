#include "dcsim/topology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dcsim/errors.hpp"
#include "dcsim/scenario.hpp"

namespace dcsim {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

template <typename... Args>
std::string cat(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

std::vector<const NodeSpec*> nodes_with_role(const std::vector<NodeSpec>& nodes, NodeRole role) {
  std::vector<const NodeSpec*> out;
  for (const auto& n : nodes) {
    if (n.role == role) out.push_back(&n);
  }
  return out;
}

std::vector<const LinkSpec*> links_on_node(const std::vector<LinkSpec>& links,
                                           const std::string& node_id) {
  std::vector<const LinkSpec*> out;
  for (const auto& l : links) {
    if (l.node == node_id) out.push_back(&l);
  }
  return out;
}

RadioTech expected_mn_radio(ArchOption opt) {
  switch (opt) {
    case ArchOption::Opt2_SA_NR:
      return RadioTech::NR;
    case ArchOption::Opt3:
    case ArchOption::Opt3A:
    case ArchOption::Opt3x:
      return RadioTech::LTE;
    case ArchOption::Opt4:
    case ArchOption::Opt4A:
      return RadioTech::NR;
    case ArchOption::Opt5:
    case ArchOption::Opt7:
    case ArchOption::Opt7A:
    case ArchOption::Opt7x:
      return RadioTech::ELTE;
  }
  return RadioTech::None;
}

RadioTech expected_sn_radio(ArchOption opt) {
  switch (opt) {
    case ArchOption::Opt3:
    case ArchOption::Opt3A:
    case ArchOption::Opt3x:
    case ArchOption::Opt7:
    case ArchOption::Opt7A:
    case ArchOption::Opt7x:
      return RadioTech::NR;
    case ArchOption::Opt4:
    case ArchOption::Opt4A:
      return RadioTech::ELTE;
    default:
      return RadioTech::None;
  }
}

bool is_elwa_access(WlanAccess a) {
  return a == WlanAccess::ElwaCollocated || a == WlanAccess::ElwaNonCollocated;
}

/// Resolves (and checks) the split point of a bearer under an option.
SplitPoint resolve_split_point(const BearerSpec& bearer, ArchOption opt) {
  const bool gw_split_option = opt == ArchOption::Opt3 || opt == ArchOption::Opt7;
  switch (bearer.kind) {
    case BearerKind::MCG:
    case BearerKind::SCG:
    case BearerKind::SwitchedLWA: {
      SplitPoint sp = bearer.split_point.value_or(SplitPoint::None);
      if (sp != SplitPoint::None) {
        fail(cat("bearer '", bearer.id, "': ", to_string(bearer.kind),
                 " is not a split bearer; split_point must be None"));
      }
      return sp;
    }
    case BearerKind::MCG_Split: {
      SplitPoint sp =
          bearer.split_point.value_or(gw_split_option ? SplitPoint::AtGateway_PacketLevel
                                                      : SplitPoint::AtMN);
      if (sp == SplitPoint::AtGateway_PacketLevel && !gw_split_option) {
        fail(cat("bearer '", bearer.id,
                 "': packet-level split at the gateway requires Opt3 or Opt7, got ",
                 to_string(opt)));
      }
      if (sp != SplitPoint::AtMN && sp != SplitPoint::AtGateway_PacketLevel) {
        fail(cat("bearer '", bearer.id, "': MCG_Split splits at the MN or the gateway, not ",
                 to_string(sp)));
      }
      return sp;
    }
    case BearerKind::SCG_Split: {
      SplitPoint sp = bearer.split_point.value_or(SplitPoint::AtSN);
      if (sp != SplitPoint::AtSN) {
        fail(cat("bearer '", bearer.id, "': SCG_Split splits at the SN, not ", to_string(sp)));
      }
      if (opt != ArchOption::Opt3x && opt != ArchOption::Opt7x) {
        fail(cat("bearer '", bearer.id, "': split at the SN requires Opt3x or Opt7x, got ",
                 to_string(opt)));
      }
      return sp;
    }
    case BearerKind::SplitLWA: {
      SplitPoint sp = bearer.split_point.value_or(SplitPoint::AtMN);
      if (sp != SplitPoint::AtMN) {
        fail(cat("bearer '", bearer.id, "': SplitLWA splits at the anchor (AtMN), not ",
                 to_string(sp)));
      }
      return sp;
    }
  }
  fail(cat("bearer '", bearer.id, "': unknown kind"));
}

}  // namespace

double PathDescriptor::fixed_delay_ms() const {
  double total = 0;
  for (const auto& h : hops) total += h.delay_ms;
  return total;
}

const NodeSpec* Topology::node_by_role(NodeRole role) const {
  for (const auto& n : nodes) {
    if (n.role == role) return &n;
  }
  return nullptr;
}

const LinkSpec* Topology::link_by_id(const std::string& id) const {
  for (const auto& l : links) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

std::vector<PathDescriptor> Topology::connection_paths() const {
  std::vector<PathDescriptor> out;
  std::set<std::string> seen;
  auto add = [&](const PathDescriptor& p) {
    if (seen.insert(p.link_id).second) out.push_back(p);
  };
  for (const auto& b : bearers) {
    for (const auto& p : b.paths) add(p);
  }
  for (const auto& p : wlan_paths) add(p);
  return out;
}

Topology build_topology(const ScenarioConfig& config) {
  validate_config(config);

  const ArchOption opt = config.arch_option;

  // Node census.
  for (NodeRole role : {NodeRole::UE, NodeRole::CoreGateway, NodeRole::AppServer}) {
    if (nodes_with_role(config.nodes, role).size() != 1) {
      fail(cat("scenario requires exactly one ", to_string(role), " node"));
    }
  }
  const auto mns = nodes_with_role(config.nodes, NodeRole::MN);
  const auto sns = nodes_with_role(config.nodes, NodeRole::SN);
  const auto wts = nodes_with_role(config.nodes, NodeRole::WlanTermination);
  if (is_dc_option(opt)) {
    if (mns.size() != 1 || sns.size() != 1) {
      fail(cat(to_string(opt), " is a dual-connectivity option: exactly one MN and one SN"));
    }
  } else {
    if (mns.size() > 1) fail("standalone options allow at most one MN");
    if (!sns.empty()) fail(cat(to_string(opt), " is standalone: no SN node allowed"));
    if (mns.empty() && !config.bearers.empty()) {
      fail("bearers are configured but there is no MN node");
    }
  }

  const NodeSpec* mn = mns.empty() ? nullptr : mns.front();
  const NodeSpec* sn = sns.empty() ? nullptr : sns.front();
  const NodeSpec* gw = nodes_with_role(config.nodes, NodeRole::CoreGateway).front();
  const NodeSpec* ue = nodes_with_role(config.nodes, NodeRole::UE).front();

  // Radio technology must match the option's anchor layout.
  if (mn && mn->radio != expected_mn_radio(opt)) {
    fail(cat("under ", to_string(opt), " the MN radio must be ",
             to_string(expected_mn_radio(opt)), ", got ", to_string(mn->radio)));
  }
  if (sn && sn->radio != expected_sn_radio(opt)) {
    fail(cat("under ", to_string(opt), " the SN radio must be ",
             to_string(expected_sn_radio(opt)), ", got ", to_string(sn->radio)));
  }
  for (const auto* wt : wts) {
    if (wt->radio != RadioTech::WiFi && wt->radio != RadioTech::WiGig) {
      fail(cat("WlanTermination '", wt->id, "' radio must be WiFi or WiGig"));
    }
  }

  // Links hang off radio nodes only; MN/SN carry exactly one link each.
  for (const auto& l : config.links) {
    const NodeSpec* owner = nullptr;
    for (const auto& n : config.nodes) {
      if (n.id == l.node) owner = &n;
    }
    if (!owner) fail(cat("link '", l.id, "' references unknown node '", l.node, "'"));
    if (owner->role != NodeRole::MN && owner->role != NodeRole::SN &&
        owner->role != NodeRole::WlanTermination) {
      fail(cat("link '", l.id, "' must attach to an MN, SN or WlanTermination node"));
    }
  }
  auto one_link = [&](const NodeSpec* n) -> const LinkSpec* {
    auto ls = links_on_node(config.links, n->id);
    if (ls.size() != 1) {
      fail(cat("node '", n->id, "' must have exactly one link, has ", ls.size()));
    }
    return ls.front();
  };
  const LinkSpec* mn_link = mn ? one_link(mn) : nullptr;
  const LinkSpec* sn_link = sn ? one_link(sn) : nullptr;

  std::vector<const LinkSpec*> wlan_links;
  for (const auto* wt : wts) {
    auto ls = links_on_node(config.links, wt->id);
    if (ls.empty()) fail(cat("WlanTermination '", wt->id, "' has no link"));
    wlan_links.insert(wlan_links.end(), ls.begin(), ls.end());
  }
  if (config.wlan_access != WlanAccess::None && wlan_links.empty()) {
    fail("wlan_access is configured but no WlanTermination link exists");
  }
  if (is_elwa_access(config.wlan_access) && !mn) {
    fail("eLWA requires a cellular anchor (MN) node");
  }

  // Bearer-set exclusivity rules.
  auto has_kind = [&](BearerKind k) {
    return std::any_of(config.bearers.begin(), config.bearers.end(),
                       [&](const BearerSpec& b) { return b.kind == k; });
  };
  if (has_kind(BearerKind::MCG_Split) && has_kind(BearerKind::SCG_Split)) {
    fail("MCG_Split and SCG_Split bearers cannot be configured simultaneously");
  }
  if (has_kind(BearerKind::MCG_Split) && has_kind(BearerKind::SCG)) {
    fail("MCG_Split and SCG bearers cannot be configured simultaneously");
  }

  const double wt_hop_ms =
      config.wlan_access == WlanAccess::ElwaCollocated ? 0.0 : config.delays.wt_ms;

  auto cellular_path = [&](const LinkSpec* link, const NodeSpec* node,
                           const std::string& bearer_id,
                           std::vector<Hop> hops, double backhaul_ms) {
    PathDescriptor p;
    p.id = link->id;
    p.variant = node->role == NodeRole::SN ? PathVariant::CellularSN : PathVariant::CellularMN;
    p.link_id = link->id;
    p.hops = std::move(hops);
    p.bearer_id = bearer_id;
    p.backup = link->backup;
    p.cost_per_mb = link->cost_per_mb;
    p.backhaul_delay_ms = backhaul_ms;
    return p;
  };

  Topology topo;
  topo.option = opt;
  topo.nodes = config.nodes;
  topo.links = config.links;

  for (const auto& b : config.bearers) {
    ResolvedBearer rb;
    rb.spec = b;
    rb.split_point = resolve_split_point(b, opt);

    const Hop gw_to_mn{cat(gw->id, "->", mn ? mn->id : ""), config.delays.core_ms};
    const Hop gw_to_sn{cat(gw->id, "->", sn ? sn->id : ""), config.delays.core_ms};

    switch (b.kind) {
      case BearerKind::MCG:
        if (!mn) fail(cat("bearer '", b.id, "': MCG bearer requires an MN"));
        rb.paths.push_back(cellular_path(mn_link, mn, b.id, {gw_to_mn}, 0));
        break;
      case BearerKind::SCG:
        if (!is_dc_option(opt)) {
          fail(cat("bearer '", b.id, "': SCG bearer requires a dual-connectivity option, got ",
                   to_string(opt)));
        }
        rb.paths.push_back(cellular_path(sn_link, sn, b.id, {gw_to_sn}, 0));
        break;
      case BearerKind::MCG_Split: {
        if (!is_dc_option(opt)) {
          fail(cat("bearer '", b.id,
                   "': MCG_Split bearer requires a dual-connectivity option, got ",
                   to_string(opt)));
        }
        // Both legs enter at the MN; the second continues over the backhaul.
        rb.paths.push_back(cellular_path(mn_link, mn, b.id, {gw_to_mn}, 0));
        rb.paths.push_back(cellular_path(
            sn_link, sn, b.id,
            {gw_to_mn, Hop{cat(mn->id, "->", sn->id), config.delays.backhaul_ms}},
            config.delays.backhaul_ms));
        break;
      }
      case BearerKind::SCG_Split: {
        // resolve_split_point already restricted this to Opt3x/Opt7x.
        rb.paths.push_back(cellular_path(sn_link, sn, b.id, {gw_to_sn}, 0));
        rb.paths.push_back(cellular_path(
            mn_link, mn, b.id,
            {gw_to_sn, Hop{cat(sn->id, "->", mn->id), config.delays.backhaul_ms}},
            config.delays.backhaul_ms));
        break;
      }
      case BearerKind::SwitchedLWA:
      case BearerKind::SplitLWA: {
        if (!is_elwa_access(config.wlan_access)) {
          fail(cat("bearer '", b.id, "': LWA bearers require wlan_access ElwaCollocated or "
                   "ElwaNonCollocated"));
        }
        if (wlan_links.size() != 1) {
          fail(cat("bearer '", b.id, "': LWA bearers require exactly one WLAN link, found ",
                   wlan_links.size()));
        }
        const LinkSpec* wl = wlan_links.front();
        PathDescriptor wlan_leg;
        wlan_leg.id = wl->id;
        wlan_leg.variant = PathVariant::WlanViaAnchor_eLWA;
        wlan_leg.link_id = wl->id;
        wlan_leg.hops = {gw_to_mn, Hop{cat(mn->id, "->", wl->node), wt_hop_ms}};
        wlan_leg.overhead_bytes = config.lwaap_overhead_bytes;
        wlan_leg.bearer_id = b.id;
        wlan_leg.backup = wl->backup;
        wlan_leg.cost_per_mb = wl->cost_per_mb;
        if (b.kind == BearerKind::SplitLWA) {
          rb.paths.push_back(cellular_path(mn_link, mn, b.id, {gw_to_mn}, 0));
        }
        rb.paths.push_back(wlan_leg);
        break;
      }
    }

    if (rb.paths.empty()) fail(cat("bearer '", b.id, "' resolves to no physical path"));
    topo.bearers.push_back(std::move(rb));
  }

  // Non-bearer WLAN access paths through the core.
  if (config.wlan_access == WlanAccess::TrustedViaCore ||
      config.wlan_access == WlanAccess::UntrustedViaCore) {
    for (const auto* wl : wlan_links) {
      PathDescriptor p;
      p.id = wl->id;
      p.link_id = wl->id;
      p.backup = wl->backup;
      p.cost_per_mb = wl->cost_per_mb;
      if (config.wlan_access == WlanAccess::TrustedViaCore) {
        p.variant = PathVariant::WlanViaCoreTrusted;
        p.hops = {Hop{cat(gw->id, "->", wl->node), config.delays.core_ms}};
      } else {
        p.variant = PathVariant::WlanViaCoreUntrusted;
        p.hops = {Hop{cat(gw->id, "->ePDG"), config.delays.core_ms},
                  Hop{cat("ePDG->", wl->node), config.delays.epdg_ms}};
      }
      topo.wlan_paths.push_back(std::move(p));
    }
  }

  if (topo.connection_paths().empty()) {
    fail("scenario defines no usable path (no bearers and no WLAN access)");
  }

  // MPTCP termination compatibility.
  const TerminationPoint term = config.mptcp.termination;
  if ((term == TerminationPoint::AtSGW || term == TerminationPoint::AtMN) &&
      !is_epc_option(opt)) {
    fail(cat("termination ", to_string(term), " requires an EPC option (Opt3/Opt3A/Opt3x), got ",
             to_string(opt)));
  }
  if ((term == TerminationPoint::AtSGW || term == TerminationPoint::AtMN) &&
      !ue->multipath_api) {
    fail("single-IP MPTCP over DC requires the UE multipath_api capability flag");
  }
  if (term == TerminationPoint::EndToEnd_IPv6MultiHoming && !ue->ipv6_multihoming) {
    fail("EndToEnd_IPv6MultiHoming termination requires the UE ipv6_multihoming flag");
  }

  return topo;
}

const std::vector<PathDescriptor>& paths_for_bearer(const Topology& topo,
                                                    const std::string& bearer_id) {
  for (const auto& b : topo.bearers) {
    if (b.spec.id == bearer_id) return b.paths;
  }
  throw ConfigError(cat("unknown bearer id '", bearer_id, "'"));
}

}  // namespace dcsim
