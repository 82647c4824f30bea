#include "dcsim/analytics.hpp"

#include <stdexcept>

namespace dcsim {

double path_availability(double psi_s, double gamma_s) {
  if (psi_s <= 0) throw std::domain_error("path_availability: psi must be > 0");
  if (gamma_s < 0) throw std::domain_error("path_availability: gamma must be >= 0");
  return psi_s / (psi_s + gamma_s);
}

double dc_availability(double theta_mn, double theta_sn) {
  if (theta_mn < 0 || theta_mn > 1 || theta_sn < 0 || theta_sn > 1) {
    throw std::domain_error("dc_availability: inputs must lie in [0, 1]");
  }
  return 1.0 - (1.0 - theta_mn) * (1.0 - theta_sn);
}

double multi_path_availability(std::span<const double> thetas) {
  if (thetas.empty()) throw std::domain_error("multi_path_availability: empty path list");
  double all_fail = 1.0;
  for (double theta : thetas) {
    if (theta < 0 || theta > 1) {
      throw std::domain_error("multi_path_availability: inputs must lie in [0, 1]");
    }
    all_fail *= 1.0 - theta;
  }
  return 1.0 - all_fail;
}

AvailabilityReport empirical_availability(const std::vector<TraceSample>& trace) {
  if (trace.empty()) throw std::domain_error("empirical_availability: empty trace");
  const std::size_t n_paths = trace.front().paths.size();
  std::vector<std::size_t> up_counts(n_paths, 0);
  std::size_t any_up = 0;
  for (const auto& sample : trace) {
    if (sample.paths.size() != n_paths) {
      throw std::domain_error("empirical_availability: inconsistent path count across samples");
    }
    bool any = false;
    for (std::size_t i = 0; i < n_paths; ++i) {
      if (sample.paths[i].up) {
        ++up_counts[i];
        any = true;
      }
    }
    if (any) ++any_up;
  }
  AvailabilityReport report;
  report.source = AvailabilitySource::Empirical;
  const double n = static_cast<double>(trace.size());
  for (std::size_t i = 0; i < n_paths; ++i) {
    report.theta_path.push_back(static_cast<double>(up_counts[i]) / n);
  }
  report.theta_dc = static_cast<double>(any_up) / n;
  return report;
}

}  // namespace dcsim
