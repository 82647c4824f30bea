// dcsim — deterministic simulator for LTE/NR dual-connectivity bearer
// architectures with an MPTCP multipath engine.
//
// Verbs:
//   run <config|canned-name>       execute one scenario, write trace + report
//   sweep [config|canned-name]     dual-path availability sweep (CSV table)
//   list                           show the canned scenario catalog
//   validate <config|canned-name>  check a config without running it
//
// Exit codes: 0 ok, 2 config validation failure, 3 runtime abort.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dcsim/errors.hpp"
#include "dcsim/simulation.hpp"

namespace {

// A positional argument names either a canned scenario or a config file.
std::string load_config_text(const std::string& arg) {
  if (const dcsim::ScenarioEntry* entry = dcsim::find_scenario(arg)) {
    if (entry->is_sweep) {
      throw dcsim::ConfigError("'" + arg + "' is a sweep entry; use the sweep verb");
    }
    return entry->config_json;
  }
  std::ifstream in(arg, std::ios::binary);
  if (!in) {
    throw dcsim::ConfigError("no canned scenario or readable file named '" + arg + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string default_out_dir() {
  if (const char* env = std::getenv("DCSIM_OUT_DIR")) return env;
  return "out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-connectivity / MPTCP scenario simulator"};
  app.require_subcommand(1);

  std::string config_arg;
  std::string sweep_arg;
  std::optional<std::uint64_t> seed;
  std::string out_dir = default_out_dir();
  std::string format = "csv";

  CLI::App* run_cmd = app.add_subcommand("run", "execute one scenario");
  run_cmd->add_option("config", config_arg, "canned scenario name or config file")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "availability sweep over a theta grid");
  sweep_cmd->add_option("config", sweep_arg, "sweep config file (optional; defaults built in)");

  app.add_subcommand("list", "list canned scenarios");

  CLI::App* validate_cmd = app.add_subcommand("validate", "validate a config without running");
  validate_cmd->add_option("config", config_arg, "canned scenario name or config file")
      ->required();

  for (CLI::App* cmd : {run_cmd, sweep_cmd}) {
    cmd->add_option("--seed", seed, "override the scenario seed");
    cmd->add_option("--out", out_dir, "output directory (env DCSIM_OUT_DIR, default ./out)");
    cmd->add_option("--format", format, "trace format")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list")) {
      for (const auto& entry : dcsim::scenario_catalog()) {
        std::printf("%-26s %s%s\n", entry.name.c_str(), entry.is_sweep ? "[sweep] " : "",
                    entry.description.c_str());
      }
      return 0;
    }

    if (app.got_subcommand("validate")) {
      const dcsim::ScenarioConfig config = dcsim::parse_config(load_config_text(config_arg));
      dcsim::validate_config(config);
      dcsim::build_topology(config);
      std::printf("ok: %s\n", config.name.c_str());
      return 0;
    }

    if (app.got_subcommand("sweep")) {
      dcsim::SweepConfig sweep;
      if (sweep_arg.empty() || dcsim::find_scenario(sweep_arg) != nullptr) {
        sweep = dcsim::default_sweep_config();
      } else {
        std::ifstream in(sweep_arg, std::ios::binary);
        if (!in) throw dcsim::ConfigError("cannot read sweep config '" + sweep_arg + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        sweep = dcsim::parse_sweep_config(buf.str());
      }
      if (seed) sweep.seed = *seed;
      const auto rows = dcsim::run_availability_sweep(sweep);
      const std::string csv = dcsim::sweep_to_csv(rows);
      std::filesystem::create_directories(out_dir);
      const std::string path =
          (std::filesystem::path(out_dir) / "availability-sweep.csv").string();
      std::ofstream out(path, std::ios::binary);
      out << csv;
      std::fputs(csv.c_str(), stdout);
      std::printf("wrote %s\n", path.c_str());
      return 0;
    }

    // run
    const dcsim::ScenarioConfig config = dcsim::parse_config(load_config_text(config_arg));
    dcsim::validate_config(config);
    dcsim::RunOptions options;
    options.seed_override = seed;
    options.out_dir = out_dir;
    options.trace_format = format == "json" ? dcsim::TraceFormat::Json : dcsim::TraceFormat::Csv;
    const dcsim::RunReport report = dcsim::run_scenario(config, options);
    std::printf("scenario %s: %llu events, %llu bytes delivered, stall %.3f s\n",
                report.config.name.c_str(),
                static_cast<unsigned long long>(report.events_processed),
                static_cast<unsigned long long>(report.totals.bytes_delivered),
                report.totals.stall_time_s);
    for (std::size_t i = 0; i < report.paths.size(); ++i) {
      std::printf("  path %-10s theta analytic %.4f empirical %.4f\n",
                  report.paths[i].id.c_str(), report.analytic_theta[i],
                  report.empirical.theta_path[i]);
    }
    std::printf("  theta_dc analytic %.4f empirical %.4f\n", report.analytic_theta_dc,
                report.empirical.theta_dc);
    for (const auto& warning : report.warnings) {
      std::fprintf(stderr, "warning: %s\n", warning.c_str());
    }
    std::printf("trace: %s\n", report.trace_path.c_str());
    return 0;
  } catch (const dcsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime abort: %s\n", e.what());
    return 3;
  }
}
