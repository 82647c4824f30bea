#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dcsim/time.hpp"

namespace dcsim {

/// Event payload categories, carried for trace/debug context.
enum class EventKind {
  LinkUp,
  LinkDown,
  PacketArrival,
  PacketDelivery,
  SampleTick,
  SnChange,
  ScenarioEnd,
  TxComplete,
  FailureDetection,
  Handshake,
  AppArrival,
  Scripted,
};

struct EngineStats {
  std::uint64_t events_processed{0};
};

/// Single-threaded discrete-event loop. Events run in strict (time, sequence)
/// order; the sequence counter breaks ties in insertion order.
class Engine {
 public:
  SimTime now() const { return now_; }

  /// Enqueue an event. Throws RuntimeAbort if t is before the current clock,
  /// since that can only come from a simulator logic bug.
  void schedule(SimTime t, EventKind kind, std::function<void()> fn);

  /// Process every event with time <= end, then advance the clock to end.
  /// Returns counters for this call. Handler exceptions propagate (fail-fast).
  EngineStats run_until(SimTime end);

  std::size_t pending() const { return heap_.size(); }

 private:
  struct Scheduled {
    SimTime t;
    std::uint64_t seq;
    EventKind kind;
    std::function<void()> fn;
  };

  static bool later(const Scheduled& a, const Scheduled& b) {
    if (a.t != b.t) return b.t < a.t;
    return b.seq < a.seq;
  }

  SimTime now_{};
  std::uint64_t next_seq_{0};
  std::vector<Scheduled> heap_;
};

}  // namespace dcsim
