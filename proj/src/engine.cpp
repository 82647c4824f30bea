#include "dcsim/engine.hpp"

#include <algorithm>
#include <sstream>

#include "dcsim/errors.hpp"

namespace dcsim {

void Engine::schedule(SimTime t, EventKind kind, std::function<void()> fn) {
  if (t < now_) {
    std::ostringstream msg;
    msg << "event scheduled in the past: t=" << t.seconds() << "s, clock=" << now_.seconds()
        << "s";
    throw RuntimeAbort(msg.str());
  }
  heap_.push_back(Scheduled{t, next_seq_++, kind, std::move(fn)});
  std::push_heap(heap_.begin(), heap_.end(), later);
}

EngineStats Engine::run_until(SimTime end) {
  if (end < now_) {
    throw RuntimeAbort("run_until target precedes the current clock");
  }
  EngineStats stats;
  while (!heap_.empty() && heap_.front().t <= end) {
    std::pop_heap(heap_.begin(), heap_.end(), later);
    Scheduled ev = std::move(heap_.back());
    heap_.pop_back();
    now_ = ev.t;
    ++stats.events_processed;
    ev.fn();
  }
  now_ = end;
  return stats;
}

}  // namespace dcsim
