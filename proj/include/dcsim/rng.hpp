#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dcsim {

/// Deterministic random stream derived from a master seed and a stable
/// per-consumer label. Consumers never share a stream, so adding a link (or
/// turning traffic on) does not perturb the draws of any other consumer.
///
/// The label hash and the uniform mapping are implemented here rather than
/// taken from <random> distributions, so that a given (seed, label) pair
/// yields the same draw sequence on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view label);

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform();

  /// Exponential draw with the given mean; mean 0 returns 0.
  double exponential(double mean);

  /// True with probability p.
  bool bernoulli(double p);

 private:
  std::mt19937_64 gen_;
};

}  // namespace dcsim
