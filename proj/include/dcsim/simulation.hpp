#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcsim/analytics.hpp"
#include "dcsim/mptcp.hpp"
#include "dcsim/scenario.hpp"

namespace dcsim {

enum class TraceFormat { Csv, Json };

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  std::string out_dir;  // empty: keep results in memory only
  TraceFormat trace_format{TraceFormat::Csv};
};

struct RunReport {
  ScenarioConfig config;  // echo, with any seed override applied
  std::uint64_t events_processed{0};
  ConnectionTotals totals;
  AvailabilityReport empirical;
  std::vector<double> analytic_theta;
  double analytic_theta_dc{0};
  std::vector<PathDescriptor> paths;
  std::vector<TraceSample> trace;
  std::string trace_path;  // empty when no files were written
  std::vector<std::string> warnings;
  std::vector<double> sn_change_interruptions_s;
};

/// Executes one scenario end to end. Deterministic for a fixed seed: the
/// emitted trace is byte-identical across runs. Throws ConfigError for bad
/// scenarios and RuntimeAbort for internal inconsistencies.
RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

std::string trace_to_csv(const std::vector<TraceSample>& trace);
std::string trace_to_json(const std::vector<TraceSample>& trace);
std::string report_to_json(const RunReport& report);

struct SweepConfig {
  std::vector<double> theta_grid;  // per-path availability targets
  double cycle_s{10};              // psi + gamma for each grid point
  double duration_s{20000};
  std::uint64_t seed{17};
};

struct SweepRow {
  double theta_single{0};
  double theta_dc_analytic{0};
  double theta_dc_empirical{0};
};

SweepConfig default_sweep_config();
SweepConfig parse_sweep_config(const std::string& text);

/// Dual-path availability sweep: the analytic column comes from the
/// closed-form combination, the empirical column from Duplicate-mode
/// Monte-Carlo runs over the renewal link processes.
std::vector<SweepRow> run_availability_sweep(const SweepConfig& sweep);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace dcsim
