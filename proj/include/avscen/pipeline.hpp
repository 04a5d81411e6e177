#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avscen/config.hpp"

namespace avscen {

/// Resolved invocation of one CLI subcommand. Flag values override the
/// corresponding config keys.
struct RunOptions {
  std::string subcommand;  // validate | ingest | classify | evaluate | mine | dream | report | pipeline
  std::string config_path;  // empty: AVSCEN_CONFIG, else built-in defaults
  std::string input_path;
  std::string out_dir = "out";

  std::string rules_path;   // --rules
  std::string truth_path;   // --truth
  std::string chains_path;  // --chains

  std::optional<double> min_support;
  std::optional<double> min_confidence;
  std::optional<double> min_lift;
  std::optional<int> min_len;
  std::optional<int> max_len;
  std::optional<int> threads;
  std::optional<int> target_scenario;     // --scenario
  std::optional<std::vector<int>> universe;  // --universe
};

/// Runs one subcommand end to end: reads the declared inputs, writes the
/// declared outputs under out_dir (assignments/, rules/, dream/, reports/),
/// and prints a one-line summary per stage. Returns the process exit status:
/// 0 on success, nonzero with a diagnostic on abort-class errors.
int run_subcommand(const RunOptions& options);

/// Parses a mining-universe spec: comma-separated ids with ranges ("20-24").
std::vector<int> parse_universe_spec(const std::string& spec);

}  // namespace avscen
