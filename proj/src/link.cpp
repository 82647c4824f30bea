#include "dcsim/link.hpp"

#include <sstream>
#include <string>

#include "dcsim/errors.hpp"

namespace dcsim {

Micros sample_phase(const LinkAvailabilityParams& params, bool up_phase, RngStream& rng) {
  const double mean = up_phase ? params.psi_s : params.gamma_s;
  if (params.distribution == PhaseDist::Deterministic) {
    return micros_from_seconds(mean);
  }
  return micros_from_seconds(rng.exponential(mean));
}

Link::Link(const LinkSpec& spec, Engine& engine, std::uint64_t master_seed)
    : spec_(spec),
      engine_(engine),
      phase_rng_(master_seed, "link:" + spec.id + ":phase"),
      loss_rng_(master_seed, "link:" + spec.id + ":loss"),
      up_(spec.initially_up),
      forced_down_(!spec.initially_up) {}

void Link::start() {
  last_change_ = engine_.now();
  schedule_next_transition();
}

void Link::schedule_next_transition() {
  if (forced_down_) return;
  if (up_ && spec_.gamma_s == 0.0) return;  // never fails
  const LinkAvailabilityParams params{spec_.psi_s, spec_.gamma_s, spec_.distribution};
  const Micros dur = sample_phase(params, up_, phase_rng_);
  const std::uint64_t token = ++pending_token_;
  const bool to_up = !up_;
  engine_.schedule(engine_.now() + dur, to_up ? EventKind::LinkUp : EventKind::LinkDown,
                   [this, token, to_up] {
                     if (token != pending_token_) return;  // superseded by a forced override
                     apply_transition(to_up);
                     schedule_next_transition();
                   });
}

void Link::apply_transition(bool to_up) {
  if (to_up == up_) {
    std::ostringstream msg;
    msg << "link '" << spec_.id << "': " << (to_up ? "up" : "down")
        << " transition while already in that phase";
    throw RuntimeAbort(msg.str());
  }
  const SimTime now = engine_.now();
  if (up_) cumulative_up_ += now - last_change_;
  last_change_ = now;
  up_ = to_up;
  ++epoch_;
  if (observer_) observer_(*this, up_);
}

void Link::force_down() {
  forced_down_ = true;
  ++pending_token_;  // cancel any scheduled stochastic transition
  if (up_) apply_transition(false);
}

void Link::force_up() {
  forced_down_ = false;
  ++pending_token_;
  if (!up_) apply_transition(true);
  schedule_next_transition();
}

Micros Link::serialization_time(int bytes) const {
  // capacity_mbps is exactly bits per microsecond.
  const double bits = static_cast<double>(bytes) * 8.0;
  return static_cast<Micros>(std::llround(bits / spec_.capacity_mbps));
}

TransmitOutcome Link::transmit(int bytes) {
  if (!up_) return {TransmitStatus::Blocked, 0};
  if (loss_rng_.bernoulli(spec_.loss)) return {TransmitStatus::Lost, 0};
  return {TransmitStatus::Delivered, micros_from_ms(spec_.delay_ms) + serialization_time(bytes)};
}

double Link::uptime_fraction(SimTime now) const {
  if (now.us <= 0) return up_ ? 1.0 : 0.0;
  Micros up_total = cumulative_up_;
  if (up_) up_total += now - last_change_;
  return static_cast<double>(up_total) / static_cast<double>(now.us);
}

}  // namespace dcsim
