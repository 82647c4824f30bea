#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace dcsim {

/// Durations and offsets, in integer microseconds.
using Micros = std::int64_t;

inline Micros micros_from_seconds(double s) {
  return static_cast<Micros>(std::llround(s * 1e6));
}

inline Micros micros_from_ms(double ms) {
  return static_cast<Micros>(std::llround(ms * 1e3));
}

/// Virtual clock value. Fixed-point microseconds so that event ordering and
/// tie-breaking are exact and platform independent.
struct SimTime {
  Micros us{0};

  static SimTime from_seconds(double s) { return SimTime{micros_from_seconds(s)}; }
  static SimTime from_ms(double ms) { return SimTime{micros_from_ms(ms)}; }

  double seconds() const { return static_cast<double>(us) / 1e6; }

  auto operator<=>(const SimTime&) const = default;

  SimTime operator+(Micros d) const { return SimTime{us + d}; }
  Micros operator-(SimTime other) const { return us - other.us; }
};

}  // namespace dcsim
