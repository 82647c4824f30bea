#include "dcsim/rng.hpp"

#include <cmath>

namespace dcsim {
namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::string_view label)
    : gen_(splitmix64(splitmix64(master_seed) ^ fnv1a64(label))) {}

double RngStream::uniform() {
  // 53-bit mantissa mapping; value is in [0, 1).
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::exponential(double mean) {
  if (mean <= 0.0) return 0.0;
  double u = uniform();
  return -mean * std::log1p(-u);
}

bool RngStream::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform() < p;
}

}  // namespace dcsim
