#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcsim/engine.hpp"
#include "dcsim/link.hpp"
#include "dcsim/scenario.hpp"
#include "dcsim/time.hpp"
#include "dcsim/topology.hpp"

namespace dcsim {

/// Snapshot of the per-path decision inputs the scheduler works from:
/// up/down state, capacity, queue occupancy and backhaul delay.
struct RoutingContext {
  struct PathInput {
    std::string path_id;
    bool link_up{false};
    bool subflow_active{false};
    double capacity_mbps{0};
    std::uint64_t queue_bytes{0};
    double srtt_ms{0};
    double backhaul_delay_ms{0};
  };
  std::vector<PathInput> paths;
};

/// Receiver-side resequencing. Releases a strictly in-order, deduplicated
/// byte stream to the application; duplicate copies from Duplicate mode are
/// absorbed here.
class ReorderBuffer {
 public:
  explicit ReorderBuffer(std::size_t capacity) : capacity_(capacity) {}

  struct InsertResult {
    bool duplicate{false};
    // (sequence, path index that delivered the first copy), in release order.
    std::vector<std::pair<std::uint64_t, std::size_t>> released;
    std::uint64_t dropped{0};  // sequences abandoned by head-of-line overflow
  };

  InsertResult insert(std::uint64_t seq, std::size_t path_index);

  std::uint64_t expected() const { return expected_; }
  std::size_t held() const { return held_.size(); }
  /// True if the sequence was already released or is waiting in the buffer.
  bool seen(std::uint64_t seq) const;

 private:
  std::uint64_t expected_{0};
  std::map<std::uint64_t, std::size_t> held_;
  std::size_t capacity_;
};

struct Subflow {
  std::size_t index{0};
  PathDescriptor path;
  Link* link{nullptr};
  SubflowState state{SubflowState::Establishing};
  SubflowPriority priority{SubflowPriority::Regular};
  std::deque<std::uint64_t> queue;  // segments assigned but not yet on the wire
  std::size_t inflight{0};
  bool tx_busy{false};
  std::optional<std::uint64_t> serializing_seq;
  double srtt_ms{0};
  std::uint64_t bytes_sent{0};
  std::uint64_t bytes_acked{0};

  // Tokens invalidate superseded scheduled events for this sub-flow.
  std::uint64_t tx_token{0};
  std::uint64_t handshake_token{0};
  std::uint64_t block_epoch{0};  // bumped by SN change to void in-flight data

  std::uint64_t queue_bytes(int segment_bytes) const {
    return queue.size() * static_cast<std::uint64_t>(segment_bytes);
  }
};

struct ConnectionTotals {
  std::uint64_t bytes_delivered{0};
  std::uint64_t segments_sent{0};       // transmission attempts
  std::uint64_t segments_delivered{0};  // released to the application
  std::uint64_t segments_lost{0};       // random loss + in-flight drops
  std::uint64_t reorder_drops{0};       // head-of-line overflow abandonments
  double stall_time_s{0};               // time with no Active sub-flow
};

/// MPTCP connection state machine over the resolved topology paths:
/// sub-flow lifecycle, Aggregate/Backup/Duplicate scheduling, failure
/// detection and fallback, SN-change handling, receiver reordering.
///
/// The sender is rate-based fluid: each sub-flow serializes segments
/// back-to-back at its path capacity; there is no congestion control.
class MptcpConnection {
 public:
  /// Picks the target sub-flow for one segment among the eligible set.
  using SchedulerPolicy =
      std::function<Subflow*(std::vector<Subflow*>& eligible, const RoutingContext&)>;

  MptcpConnection(Engine& engine, std::vector<PathDescriptor> paths,
                  std::vector<Link*> links, const MptcpSettings& settings);

  /// Creates one sub-flow per path in Establishing state and starts the
  /// handshakes (one path RTT each) plus the application source.
  void open();

  /// Link transition fan-in from the link processes.
  void on_link_transition(const Link& link, bool up);

  /// Applies the termination-point trade-off for an SN change and returns
  /// the interruption actually imposed on the SN sub-flow.
  Micros sn_change();

  RoutingContext routing_context() const;

  /// Sub-flow set the scheduler would give the next segment right now.
  std::vector<const Subflow*> select_for_next_segment();

  void set_policy(SchedulerPolicy policy) { policy_ = std::move(policy); }

  struct PathInterval {
    std::uint64_t delivered_bytes{0};
    std::uint64_t redundant_bytes{0};
  };
  /// Returns and resets the per-path counters for the elapsed interval.
  PathInterval take_interval(std::size_t path_index);

  ConnectionTotals totals(SimTime now) const;
  const std::vector<Subflow>& subflows() const { return subflows_; }
  const std::vector<PathDescriptor>& paths() const { return paths_; }
  std::vector<std::string> take_warnings();
  const ReorderBuffer& reorder() const { return reorder_; }
  const MptcpSettings& settings() const { return settings_; }

 private:
  Subflow* find_by_link(const std::string& link_id);
  bool any_active() const;
  void touch_stall_clock();
  void begin_handshake(std::size_t idx);
  void refill();
  std::vector<Subflow*> eligible_targets();
  Subflow* pick_one(std::vector<Subflow*>& eligible);
  bool has_next_segment();
  std::uint64_t pop_next_segment();
  void start_tx(std::size_t idx);
  void on_serialized(std::size_t idx, std::uint64_t seq, TransmitOutcome outcome);
  void on_arrival(std::size_t idx, std::uint64_t seq, std::uint64_t link_epoch,
                  std::uint64_t block_epoch, SimTime sent_at);
  void degrade(std::size_t idx);
  void requeue_pending(Subflow& sf);
  void schedule_app_arrival();
  double nominal_rtt_ms(const PathDescriptor& path, const Link& link) const;

  Engine& engine_;
  std::vector<PathDescriptor> paths_;
  MptcpSettings settings_;
  std::vector<Subflow> subflows_;
  SchedulerPolicy policy_;

  ReorderBuffer reorder_;
  std::deque<std::uint64_t> retransmit_;
  std::uint64_t next_seq_{0};
  bool saturated_{false};
  std::uint64_t pending_app_{0};
  std::uint64_t app_generated_{0};
  SimTime opened_at_{};
  bool opened_{false};

  ConnectionTotals totals_;
  std::vector<PathInterval> intervals_;
  std::vector<std::string> warnings_;

  bool was_any_active_{false};
  SimTime last_stall_mark_{};
  Micros stall_us_{0};
};

}  // namespace dcsim
