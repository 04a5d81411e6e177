#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "avscen/pipeline.hpp"
#include "avscen/util.hpp"

int main(int argc, char** argv) {
  CLI::App app{"avscen: crash-scenario analytics toolkit"};
  app.require_subcommand(1);

  avscen::RunOptions options;
  std::string universe_spec;
  double min_support = 0, min_confidence = 0, min_lift = 0;
  int min_len = 0, max_len = 0, threads = 0, scenario = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", options.config_path, "configuration file (JSON)");
    cmd->add_option("--out", options.out_dir, "output directory (default: out)");
  };
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", options.input_path, "record file (.csv or .jsonl)");
  };
  auto add_rules = [&](CLI::App* cmd) {
    cmd->add_option("--rules", options.rules_path, "mapping rule file");
  };
  auto add_mining = [&](CLI::App* cmd) {
    cmd->add_option("--min-support", min_support, "minimum itemset support")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--min-confidence", min_confidence, "minimum rule confidence")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--min-lift", min_lift, "minimum rule lift (strict)");
    cmd->add_option("--min-len", min_len, "minimum total rule length");
    cmd->add_option("--max-len", max_len, "maximum total rule length");
    cmd->add_option("--threads", threads, "support-counting threads");
    cmd->add_option("--scenario", scenario, "mining target scenario id");
    cmd->add_option("--universe", universe_spec,
                    "mining universe scenario ids, e.g. 20-24 or 20,23,24");
  };

  CLI::App* validate = app.add_subcommand("validate", "check a record file");
  add_common(validate); add_input(validate);

  CLI::App* ingest = app.add_subcommand("ingest", "parse and filter a record file");
  add_common(ingest); add_input(ingest);

  CLI::App* classify = app.add_subcommand("classify", "assign pre-crash scenarios");
  add_common(classify); add_input(classify); add_rules(classify);

  CLI::App* evaluate = app.add_subcommand("evaluate", "score assignments against ground truth");
  add_common(evaluate); add_input(evaluate); add_rules(evaluate);
  evaluate->add_option("--truth", options.truth_path, "ground-truth labels (record_id,scenario)");

  CLI::App* mine = app.add_subcommand("mine", "mine association rules for a scenario");
  add_common(mine); add_input(mine); add_rules(mine); add_mining(mine);

  CLI::App* dream = app.add_subcommand("dream", "aggregate causal chains");
  add_common(dream);
  dream->add_option("--chains", options.chains_path, "crash chain file");

  CLI::App* report = app.add_subcommand("report", "descriptive statistics and heatmap");
  add_common(report); add_input(report); add_rules(report);

  CLI::App* pipeline = app.add_subcommand("pipeline", "run every stage");
  add_common(pipeline); add_input(pipeline); add_rules(pipeline); add_mining(pipeline);
  pipeline->add_option("--truth", options.truth_path, "ground-truth labels (record_id,scenario)");
  pipeline->add_option("--chains", options.chains_path, "crash chain file");

  CLI11_PARSE(app, argc, argv);

  auto given = [](CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  for (CLI::App* cmd : {validate, ingest, classify, evaluate, mine, dream, report, pipeline}) {
    if (cmd->parsed()) {
      options.subcommand = cmd->get_name();
      if (given(cmd, "--min-support")) options.min_support = min_support;
      if (given(cmd, "--min-confidence")) options.min_confidence = min_confidence;
      if (given(cmd, "--min-lift")) options.min_lift = min_lift;
      if (given(cmd, "--min-len")) options.min_len = min_len;
      if (given(cmd, "--max-len")) options.max_len = max_len;
      if (given(cmd, "--threads")) options.threads = threads;
      if (given(cmd, "--scenario")) options.target_scenario = scenario;
      if (given(cmd, "--universe")) {
        try {
          options.universe = avscen::parse_universe_spec(universe_spec);
        } catch (const avscen::Error& e) {
          std::cerr << "error: " << e.what() << "\n";
          return 1;
        }
      }
      break;
    }
  }

  return avscen::run_subcommand(options);
}
