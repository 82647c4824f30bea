#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "dcsim/engine.hpp"
#include "dcsim/rng.hpp"
#include "dcsim/time.hpp"
#include "dcsim/topology.hpp"

namespace dcsim {

struct LinkAvailabilityParams {
  double psi_s{0};    // mean uptime
  double gamma_s{0};  // mean downtime; 0 = never fails
  PhaseDist distribution{PhaseDist::Exponential};
};

/// Duration of one up or down phase. Exponential draws have mean psi (up)
/// or gamma (down); Deterministic returns the mean exactly.
Micros sample_phase(const LinkAvailabilityParams& params, bool up_phase, RngStream& rng);

enum class TransmitStatus { Delivered, Lost, Blocked };

struct TransmitOutcome {
  TransmitStatus status{TransmitStatus::Blocked};
  Micros latency{0};  // propagation + serialization, when delivered
};

/// Alternating up/down renewal process plus capacity, delay and loss.
/// All failures the MPTCP engine reacts to originate here.
class Link {
 public:
  Link(const LinkSpec& spec, Engine& engine, std::uint64_t master_seed);

  const LinkSpec& spec() const { return spec_; }
  bool up() const { return up_; }

  /// Increments on every transition; lets in-flight packets detect that the
  /// link dropped (and came back) underneath them.
  std::uint64_t epoch() const { return epoch_; }

  /// Schedules the first stochastic transition. Call once at t=0.
  void start();

  /// Apply a transition. Throws RuntimeAbort if the direction does not match
  /// the current phase (an engine bug, not a scenario condition).
  void apply_transition(bool to_up);

  /// Scripted overrides. While forced down, stochastic transitions are
  /// suppressed; force_up releases the hold and resumes the renewal process.
  void force_down();
  void force_up();

  Micros serialization_time(int bytes) const;

  /// Outcome of putting `bytes` on the link right now: blocked when down,
  /// lost with probability `loss`, otherwise delivered after
  /// delay + serialization.
  TransmitOutcome transmit(int bytes);

  void set_observer(std::function<void(Link&, bool)> observer) {
    observer_ = std::move(observer);
  }

  /// Exact time-weighted fraction of [0, now] spent up.
  double uptime_fraction(SimTime now) const;

 private:
  void schedule_next_transition();

  LinkSpec spec_;
  Engine& engine_;
  RngStream phase_rng_;
  RngStream loss_rng_;
  bool up_{true};
  bool forced_down_{false};
  std::uint64_t epoch_{0};
  std::uint64_t pending_token_{0};  // invalidates superseded scheduled transitions
  SimTime last_change_{};
  Micros cumulative_up_{0};
  std::function<void(Link&, bool)> observer_;
};

}  // namespace dcsim
