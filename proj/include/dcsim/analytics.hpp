#pragma once

#include <span>
#include <string>
#include <vector>

#include "dcsim/time.hpp"

namespace dcsim {

enum class AvailabilitySource { Analytic, Empirical };

struct AvailabilityReport {
  std::vector<double> theta_path;  // per connection path, declaration order
  double theta_dc{0};              // combined availability
  AvailabilitySource source{AvailabilitySource::Analytic};
};

/// Theta = psi / (psi + gamma). Throws std::domain_error for psi <= 0.
double path_availability(double psi_s, double gamma_s);

/// Theta_DC = 1 - (1 - theta_mn)(1 - theta_sn): the combined channel fails
/// only when both paths fail. Inputs must lie in [0, 1].
double dc_availability(double theta_mn, double theta_sn);

/// N-path generalization: 1 - prod(1 - theta_i). Non-empty list required.
double multi_path_availability(std::span<const double> thetas);

/// One 0.5 s observation interval (interval ends at t).
struct TraceSample {
  struct PerPath {
    std::string path_id;
    bool up{false};
    double throughput_mbps{0};  // application-useful bytes over the interval
    bool active{false};         // sub-flow on this path was Active at the tick
    double redundant_mbps{0};   // duplicate copies arriving on this path
  };
  SimTime t;
  Micros interval_us{0};
  std::vector<PerPath> paths;
  double aggregate_mbps{0};
};

/// Sample-based availability estimate over a trace (intended for
/// Duplicate-mode runs, where every path carries every segment).
/// theta_dc is the fraction of samples with at least one path up.
/// Throws std::domain_error on an empty trace.
AvailabilityReport empirical_availability(const std::vector<TraceSample>& trace);

}  // namespace dcsim
