#include "dcsim/mptcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "dcsim/errors.hpp"

namespace dcsim {

ReorderBuffer::InsertResult ReorderBuffer::insert(std::uint64_t seq, std::size_t path_index) {
  InsertResult result;
  if (seq < expected_ || held_.contains(seq)) {
    result.duplicate = true;
    return result;
  }
  held_.emplace(seq, path_index);

  auto release_contiguous = [&] {
    for (auto it = held_.begin(); it != held_.end() && it->first == expected_;) {
      result.released.emplace_back(it->first, it->second);
      ++expected_;
      it = held_.erase(it);
    }
  };
  release_contiguous();

  // Head-of-line drop: the missing segment blocking delivery is abandoned
  // and the stream resumes at the oldest held sequence.
  while (held_.size() > capacity_) {
    result.dropped += held_.begin()->first - expected_;
    expected_ = held_.begin()->first;
    release_contiguous();
  }
  return result;
}

bool ReorderBuffer::seen(std::uint64_t seq) const {
  return seq < expected_ || held_.contains(seq);
}

MptcpConnection::MptcpConnection(Engine& engine, std::vector<PathDescriptor> paths,
                                 std::vector<Link*> links, const MptcpSettings& settings)
    : engine_(engine),
      paths_(std::move(paths)),
      settings_(settings),
      reorder_(static_cast<std::size_t>(settings.reorder_capacity)),
      intervals_(paths_.size()) {
  if (paths_.size() != links.size()) {
    throw RuntimeAbort("connection paths and links are not parallel");
  }
  subflows_.reserve(paths_.size());
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    Subflow sf;
    sf.index = i;
    sf.path = paths_[i];
    sf.link = links[i];
    sf.priority = paths_[i].backup ? SubflowPriority::Backup : SubflowPriority::Regular;
    sf.srtt_ms = nominal_rtt_ms(paths_[i], *links[i]);
    subflows_.push_back(std::move(sf));
  }
  policy_ = [this](std::vector<Subflow*>& eligible, const RoutingContext&) -> Subflow* {
    Subflow* best = nullptr;
    double best_metric = std::numeric_limits<double>::infinity();
    for (auto* sf : eligible) {
      const double capacity = sf->link->spec().capacity_mbps;
      const double drain_ms =
          static_cast<double>(sf->queue_bytes(settings_.segment_bytes)) * 8.0 / capacity / 1e3;
      const double metric = sf->srtt_ms + drain_ms;
      if (!best || metric < best_metric - 1e-12 ||
          (std::abs(metric - best_metric) <= 1e-12 &&
           capacity > best->link->spec().capacity_mbps)) {
        best = sf;
        best_metric = metric;
      }
    }
    return best;
  };
}

double MptcpConnection::nominal_rtt_ms(const PathDescriptor& path, const Link& link) const {
  return 2.0 * (path.fixed_delay_ms() + link.spec().delay_ms);
}

void MptcpConnection::open() {
  opened_ = true;
  opened_at_ = engine_.now();
  last_stall_mark_ = opened_at_;
  was_any_active_ = false;
  if (!settings_.demand_mbps.has_value()) {
    saturated_ = true;
  }
  for (auto& sf : subflows_) {
    if (sf.link->up()) begin_handshake(sf.index);
  }
  schedule_app_arrival();
}

bool MptcpConnection::any_active() const {
  return std::any_of(subflows_.begin(), subflows_.end(),
                     [](const Subflow& sf) { return sf.state == SubflowState::Active; });
}

void MptcpConnection::touch_stall_clock() {
  const SimTime now = engine_.now();
  if (opened_ && !was_any_active_) stall_us_ += now - last_stall_mark_;
  last_stall_mark_ = now;
}

void MptcpConnection::begin_handshake(std::size_t idx) {
  Subflow& sf = subflows_[idx];
  const std::uint64_t token = ++sf.handshake_token;
  if (!sf.link->up()) return;
  const Micros hs = micros_from_ms(sf.srtt_ms);
  engine_.schedule(engine_.now() + hs, EventKind::Handshake, [this, idx, token] {
    Subflow& sf = subflows_[idx];
    if (token != sf.handshake_token) return;
    if (!sf.link->up()) return;
    if (sf.state == SubflowState::Active || sf.state == SubflowState::Closed) return;
    touch_stall_clock();
    sf.state = SubflowState::Active;
    was_any_active_ = any_active();
    refill();
  });
}

void MptcpConnection::on_link_transition(const Link& link, bool up) {
  for (auto& sf : subflows_) {
    if (sf.path.link_id != link.spec().id) continue;
    const std::size_t idx = sf.index;
    if (!up) {
      // The segment being serialized goes down with the link.
      if (sf.tx_busy) {
        ++sf.tx_token;
        sf.tx_busy = false;
        if (sf.serializing_seq) {
          ++totals_.segments_lost;
          if (!reorder_.seen(*sf.serializing_seq)) retransmit_.push_back(*sf.serializing_seq);
          sf.serializing_seq.reset();
        }
      }
      if (sf.state == SubflowState::Active) {
        const Micros detect = micros_from_ms(settings_.detection_latency_ms);
        engine_.schedule(engine_.now() + detect, EventKind::FailureDetection, [this, idx] {
          Subflow& s = subflows_[idx];
          if (s.state == SubflowState::Active && !s.link->up()) degrade(idx);
        });
      } else {
        ++sf.handshake_token;  // abort any pending handshake
      }
    } else {
      if (sf.state == SubflowState::Establishing || sf.state == SubflowState::Degraded) {
        begin_handshake(idx);
      } else if (sf.state == SubflowState::Active) {
        start_tx(idx);
        refill();
      }
    }
  }
}

void MptcpConnection::degrade(std::size_t idx) {
  Subflow& sf = subflows_[idx];
  touch_stall_clock();
  sf.state = SubflowState::Degraded;
  was_any_active_ = any_active();
  requeue_pending(sf);
  refill();
}

void MptcpConnection::requeue_pending(Subflow& sf) {
  for (std::uint64_t seq : sf.queue) {
    if (!reorder_.seen(seq)) retransmit_.push_back(seq);
  }
  sf.queue.clear();
}

Micros MptcpConnection::sn_change() {
  Subflow* sn = nullptr;
  for (auto& sf : subflows_) {
    if (sf.path.variant == PathVariant::CellularSN) {
      sn = &sf;
      break;
    }
  }
  // Single-path connections and MN/end-to-end termination see no interruption:
  // the anchor keeps steering PDUs while the SN changes underneath it.
  if (!sn) return 0;
  if (settings_.termination != TerminationPoint::AtSGW) return 0;

  const Micros t_interrupt = micros_from_ms(settings_.t_interrupt_ms);
  Subflow& sf = *sn;
  const std::size_t idx = sf.index;
  if (sf.tx_busy) {
    ++sf.tx_token;
    sf.tx_busy = false;
    if (sf.serializing_seq) {
      ++totals_.segments_lost;
      if (!reorder_.seen(*sf.serializing_seq)) retransmit_.push_back(*sf.serializing_seq);
      sf.serializing_seq.reset();
    }
  }
  ++sf.block_epoch;  // voids in-flight data on the old SN path
  ++sf.handshake_token;
  touch_stall_clock();
  sf.state = SubflowState::Degraded;
  was_any_active_ = any_active();
  requeue_pending(sf);
  refill();
  engine_.schedule(engine_.now() + t_interrupt, EventKind::SnChange,
                   [this, idx] { begin_handshake(idx); });
  return t_interrupt;
}

RoutingContext MptcpConnection::routing_context() const {
  RoutingContext ctx;
  for (const auto& sf : subflows_) {
    RoutingContext::PathInput in;
    in.path_id = sf.path.id;
    in.link_up = sf.link->up();
    in.subflow_active = sf.state == SubflowState::Active;
    in.capacity_mbps = sf.link->up() ? sf.link->spec().capacity_mbps : 0.0;
    in.queue_bytes = sf.queue_bytes(settings_.segment_bytes);
    in.srtt_ms = sf.srtt_ms;
    in.backhaul_delay_ms = sf.path.backhaul_delay_ms;
    ctx.paths.push_back(std::move(in));
  }
  return ctx;
}

std::vector<Subflow*> MptcpConnection::eligible_targets() {
  std::vector<Subflow*> out;
  for (auto& sf : subflows_) {
    if (sf.state == SubflowState::Active &&
        sf.queue.size() < static_cast<std::size_t>(settings_.subflow_window)) {
      out.push_back(&sf);
    }
  }
  return out;
}

Subflow* MptcpConnection::pick_one(std::vector<Subflow*>& eligible) {
  if (settings_.mode == SchedulerMode::Backup) {
    const bool regular_active =
        std::any_of(subflows_.begin(), subflows_.end(), [](const Subflow& sf) {
          return sf.state == SubflowState::Active && sf.priority == SubflowPriority::Regular;
        });
    std::erase_if(eligible, [&](Subflow* sf) {
      return regular_active ? sf->priority != SubflowPriority::Regular
                            : sf->priority != SubflowPriority::Backup;
    });
  }
  if (eligible.empty()) return nullptr;
  const RoutingContext ctx = routing_context();
  return policy_(eligible, ctx);
}

std::vector<const Subflow*> MptcpConnection::select_for_next_segment() {
  std::vector<const Subflow*> out;
  if (settings_.mode == SchedulerMode::Duplicate) {
    for (auto* sf : eligible_targets()) out.push_back(sf);
  } else {
    auto eligible = eligible_targets();
    if (Subflow* sel = pick_one(eligible)) out.push_back(sel);
  }
  return out;
}

bool MptcpConnection::has_next_segment() {
  while (!retransmit_.empty() && reorder_.seen(retransmit_.front())) retransmit_.pop_front();
  return !retransmit_.empty() || saturated_ || pending_app_ > 0;
}

std::uint64_t MptcpConnection::pop_next_segment() {
  if (!retransmit_.empty()) {
    const std::uint64_t seq = retransmit_.front();
    retransmit_.pop_front();
    return seq;
  }
  if (pending_app_ > 0) --pending_app_;
  return next_seq_++;
}

void MptcpConnection::refill() {
  if (!opened_) return;
  if (settings_.mode == SchedulerMode::Duplicate) {
    while (true) {
      auto targets = eligible_targets();
      if (targets.empty() || !has_next_segment()) break;
      const std::uint64_t seq = pop_next_segment();
      for (auto* t : targets) t->queue.push_back(seq);
      for (auto* t : targets) start_tx(t->index);
    }
  } else {
    while (true) {
      if (!has_next_segment()) break;
      auto eligible = eligible_targets();
      Subflow* sel = pick_one(eligible);
      if (!sel) break;
      sel->queue.push_back(pop_next_segment());
      start_tx(sel->index);
    }
  }
}

void MptcpConnection::start_tx(std::size_t idx) {
  Subflow& sf = subflows_[idx];
  if (sf.tx_busy || sf.state != SubflowState::Active || sf.queue.empty() || !sf.link->up()) {
    return;
  }
  const std::uint64_t seq = sf.queue.front();
  sf.queue.pop_front();
  const int wire_bytes = settings_.segment_bytes + sf.path.overhead_bytes;
  const TransmitOutcome outcome = sf.link->transmit(wire_bytes);
  if (outcome.status == TransmitStatus::Blocked) {
    sf.queue.push_front(seq);
    return;
  }
  sf.tx_busy = true;
  sf.serializing_seq = seq;
  ++totals_.segments_sent;
  sf.bytes_sent += static_cast<std::uint64_t>(settings_.segment_bytes);
  const Micros ser = sf.link->serialization_time(wire_bytes);
  const std::uint64_t token = ++sf.tx_token;
  engine_.schedule(engine_.now() + ser, EventKind::TxComplete, [this, idx, seq, token, outcome] {
    Subflow& s = subflows_[idx];
    if (token != s.tx_token) return;
    s.tx_busy = false;
    s.serializing_seq.reset();
    on_serialized(idx, seq, outcome);
    start_tx(idx);
    refill();
  });
}

void MptcpConnection::on_serialized(std::size_t idx, std::uint64_t seq,
                                    TransmitOutcome outcome) {
  Subflow& sf = subflows_[idx];
  if (outcome.status == TransmitStatus::Lost) {
    ++totals_.segments_lost;
    return;
  }
  const Micros propagation =
      micros_from_ms(sf.link->spec().delay_ms + sf.path.fixed_delay_ms());
  ++sf.inflight;
  const std::uint64_t link_epoch = sf.link->epoch();
  const std::uint64_t block_epoch = sf.block_epoch;
  const SimTime sent_at = engine_.now();
  engine_.schedule(engine_.now() + propagation, EventKind::PacketArrival,
                   [this, idx, seq, link_epoch, block_epoch, sent_at] {
                     on_arrival(idx, seq, link_epoch, block_epoch, sent_at);
                   });
}

void MptcpConnection::on_arrival(std::size_t idx, std::uint64_t seq, std::uint64_t link_epoch,
                                 std::uint64_t block_epoch, SimTime sent_at) {
  Subflow& sf = subflows_[idx];
  if (sf.inflight > 0) --sf.inflight;
  if (link_epoch != sf.link->epoch() || block_epoch != sf.block_epoch) {
    // The path failed (or the SN changed) while this segment was in flight.
    ++totals_.segments_lost;
    if (!reorder_.seen(seq)) retransmit_.push_back(seq);
    refill();
    return;
  }
  const double rtt_sample_ms =
      2.0 * static_cast<double>(engine_.now() - sent_at) / 1e3;
  sf.srtt_ms = 0.875 * sf.srtt_ms + 0.125 * rtt_sample_ms;

  auto result = reorder_.insert(seq, sf.index);
  if (result.duplicate) {
    intervals_[sf.index].redundant_bytes += static_cast<std::uint64_t>(settings_.segment_bytes);
    return;
  }
  for (const auto& [rseq, path_idx] : result.released) {
    (void)rseq;
    const auto bytes = static_cast<std::uint64_t>(settings_.segment_bytes);
    intervals_[path_idx].delivered_bytes += bytes;
    totals_.bytes_delivered += bytes;
    ++totals_.segments_delivered;
    subflows_[path_idx].bytes_acked += bytes;
  }
  if (result.dropped > 0) {
    totals_.reorder_drops += result.dropped;
    std::ostringstream msg;
    msg << "t=" << engine_.now().seconds() << "s reorder buffer overflow: abandoned "
        << result.dropped << " head-of-line segment(s)";
    warnings_.push_back(msg.str());
  }
}

void MptcpConnection::schedule_app_arrival() {
  if (!settings_.demand_mbps.has_value()) return;
  const double demand = *settings_.demand_mbps;
  if (demand <= 0) return;
  const double bits_per_segment = static_cast<double>(settings_.segment_bytes) * 8.0;
  const Micros next =
      static_cast<Micros>(std::llround(static_cast<double>(app_generated_ + 1) *
                                       bits_per_segment / demand));
  engine_.schedule(SimTime{opened_at_.us + next}, EventKind::AppArrival, [this] {
    ++app_generated_;
    ++pending_app_;
    refill();
    schedule_app_arrival();
  });
}

MptcpConnection::PathInterval MptcpConnection::take_interval(std::size_t path_index) {
  PathInterval out = intervals_.at(path_index);
  intervals_[path_index] = PathInterval{};
  return out;
}

ConnectionTotals MptcpConnection::totals(SimTime now) const {
  ConnectionTotals out = totals_;
  Micros stall = stall_us_;
  if (opened_ && !was_any_active_ && now > last_stall_mark_) {
    stall += now - last_stall_mark_;
  }
  out.stall_time_s = static_cast<double>(stall) / 1e6;
  return out;
}

std::vector<std::string> MptcpConnection::take_warnings() {
  return std::exchange(warnings_, {});
}

Subflow* MptcpConnection::find_by_link(const std::string& link_id) {
  for (auto& sf : subflows_) {
    if (sf.path.link_id == link_id) return &sf;
  }
  return nullptr;
}

}  // namespace dcsim
