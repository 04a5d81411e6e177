#include "avscen/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "avscen/dream.hpp"
#include "avscen/io.hpp"
#include "avscen/mining.hpp"
#include "avscen/reports.hpp"
#include "avscen/rules.hpp"
#include "avscen/scenario.hpp"
#include "avscen/util.hpp"

namespace avscen {

namespace {

namespace fs = std::filesystem;

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct Stage {
  const Config& config;
  const FieldCatalog& catalog;
  fs::path out;
  std::vector<std::string>* log;

  void emit(const fs::path& relative, const std::string& content) const {
    const fs::path target = out / relative;
    fs::create_directories(target.parent_path());
    write_file(target.string(), content);
  }

  void say(const std::string& line) const {
    std::cout << line << "\n";
    log->push_back(line);
  }
};

std::vector<CrashRecord> read_input(const Stage& stage, const std::string& input_path,
                                    bool write_diagnostics) {
  if (input_path.empty()) throw Error("no input file given (--input)");
  const ParseResult parsed = parse_records(record_file_for(input_path), stage.catalog);
  if (write_diagnostics) {
    std::string csv = "line,record_id,message\n";
    for (const auto& d : parsed.diagnostics)
      csv += std::to_string(d.line) + "," + csv_escape(d.record_id) + "," +
             csv_escape(d.message) + "\n";
    stage.emit("reports/ingest_diagnostics.csv", csv);
  }
  return parsed.records;
}

RuleSet load_rule_file(const Stage& stage, const std::string& rules_path) {
  const std::string path = !rules_path.empty() ? rules_path : stage.config.rules_path;
  if (path.empty()) throw Error("no rule file given (--rules or config rules_path)");
  return load_rules(path, stage.catalog);
}

std::map<std::string, int> load_truth(const std::string& path) {
  const auto lines = split(read_file(path), '\n');
  std::map<std::string, int> truth;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (i == 0 && line == "record_id,scenario")) continue;
    const auto cells = split(line, ',');
    const auto scenario = cells.size() == 2 ? parse_int(cells[1]) : std::nullopt;
    if (!scenario || !scenario_id_valid(static_cast<int>(*scenario)))
      throw Error("truth line " + std::to_string(i + 1) + ": expected record_id,scenario");
    truth[cells[0]] = static_cast<int>(*scenario);
  }
  return truth;
}

std::vector<CrashRecord> stage_ingest(const Stage& stage, const std::string& input_path) {
  const std::vector<CrashRecord> records = read_input(stage, input_path, true);
  const FilterResult filtered = filter_for_analysis(records);

  std::string report = "criterion,count\n";
  report += "input," + std::to_string(filtered.report.input) + "\n";
  report += "retained," + std::to_string(filtered.report.retained) + "\n";
  report += "removed_mode," + std::to_string(filtered.report.removed_mode) + "\n";
  report += "removed_vehicle_count," + std::to_string(filtered.report.removed_vehicle_count) + "\n";
  stage.emit("reports/filter_report.csv", report);
  stage.emit("reports/records_filtered.csv", to_delimited(filtered.retained));

  std::string annual = "year,party,count\n";
  for (const auto& [year, parties] : annual_party_distribution(records))
    for (const auto& [party, count] : parties)
      annual += std::to_string(year) + "," + csv_escape(party) + "," + std::to_string(count) + "\n";
  stage.emit("reports/annual_party.csv", annual);

  stage.say("ingest: " + std::to_string(filtered.report.input) + " records, retained " +
            std::to_string(filtered.report.retained));
  return filtered.retained;
}

std::map<std::string, int> stage_classify(const Stage& stage,
                                          const std::vector<CrashRecord>& records,
                                          const RuleSet& rules) {
  std::string csv = "record_id,scenario_id,scenario_name,rule_id,low_confidence\n";
  std::map<std::string, int> assignments;
  for (const auto& record : records) {
    const ClassifyResult result = classify(record, rules, stage.catalog);
    assignments[record.record_id] = result.scenario;
    csv += csv_escape(record.record_id) + "," + std::to_string(result.scenario) + "," +
           csv_escape(scenario_name(result.scenario)) + "," +
           (result.match ? csv_escape(result.match->rule_id) : std::string()) + "," +
           (result.match && result.match->low_confidence ? "1" : "0") + "\n";
  }
  stage.emit("assignments/assignments.csv", csv);

  std::string freq = "scenario_id,scenario_name,count,percentage\n";
  const auto table = scenario_frequency_table(assignments);
  for (const auto& row : table)
    freq += std::to_string(row.scenario) + "," + csv_escape(scenario_name(row.scenario)) + "," +
            std::to_string(row.count) + "," +
            format_fixed(round_half_up(row.percentage, 2), 2) + "\n";
  stage.emit("reports/frequency_table.csv", freq);

  stage.say("classify: " + std::to_string(records.size()) + " records -> " +
            std::to_string(table.size()) + " scenarios");
  return assignments;
}

void stage_evaluate(const Stage& stage, const std::map<std::string, int>& predicted,
                    const std::map<std::string, int>& truth) {
  const EvaluationReport report = evaluate(predicted, truth);
  int missed_total = 0;
  for (const auto& [scenario, n] : report.missed_per_scenario) missed_total += n;

  std::string csv = "metric,value\n";
  csv += "total," + std::to_string(report.total) + "\n";
  csv += "correct," + std::to_string(report.correct) + "\n";
  csv += "false_count," + std::to_string(report.false_count) + "\n";
  csv += "missed_total," + std::to_string(missed_total) + "\n";
  for (const auto& [scenario, n] : report.missed_per_scenario)
    csv += "missed_scenario_" + std::to_string(scenario) + "," + std::to_string(n) + "\n";
  csv += "far_percent," + format_fixed(round_half_up(report.far * 100.0, 2), 2) + "\n";
  csv += "mar_percent," + format_fixed(round_half_up(report.mar * 100.0, 2), 2) + "\n";
  csv += "accuracy_percent," + format_fixed(round_half_up(report.accuracy * 100.0, 2), 2) + "\n";
  stage.emit("reports/evaluation.csv", csv);

  stage.say("evaluate: accuracy " + format_fixed(round_half_up(report.accuracy * 100.0, 2), 2) +
            "%, far " + format_fixed(round_half_up(report.far * 100.0, 2), 2) + "%, mar " +
            format_fixed(round_half_up(report.mar * 100.0, 2), 2) + "%");
}

void stage_mine(const Stage& stage, const std::vector<CrashRecord>& records,
                const std::map<std::string, int>& assignments) {
  const Config& cfg = stage.config;
  const auto& fields = cfg.mining_fields.empty() ? default_mining_fields() : cfg.mining_fields;
  const std::vector<Transaction> transactions =
      encode_transactions(records, fields, assignments, cfg.universe, stage.catalog);
  const std::vector<Itemset> frequent =
      apriori_frequent_itemsets(transactions, cfg.min_support, cfg.threads);
  std::vector<AssociationRule> mined =
      generate_rules(frequent, transactions, cfg.min_confidence, cfg.min_len, cfg.max_len);
  mined = filter_and_rank(std::move(mined), cfg.min_lift, scenario_token(cfg.target_scenario));

  const std::string name = "rules/rules_s" + std::to_string(cfg.target_scenario) + ".csv";
  stage.emit(name, mined_rules_to_csv(mined));
  stage.say("mine: " + std::to_string(transactions.size()) + " transactions, " +
            std::to_string(frequent.size()) + " frequent itemsets, " +
            std::to_string(mined.size()) + " rules for scenario " +
            std::to_string(cfg.target_scenario));
}

void stage_dream(const Stage& stage, const std::string& chains_path) {
  const std::string path = !chains_path.empty() ? chains_path : stage.config.chains_path;
  if (path.empty()) throw Error("no chain file given (--chains or config chains_path)");

  CausalChainGraph graph(taxonomy_for(stage.config));
  for (const auto& chain : load_chain_file(path)) graph.add_crash_chain(chain);

  stage.emit("dream/graph.dot", graph.to_dot());

  std::string nodes = "label,kind,crash_count\n";
  for (const auto& [label, count] : graph.node_crash_counts()) {
    const TaxonomyEntry* entry = graph.taxonomy().find(label);
    nodes += csv_escape(label) + "," +
             (entry->kind == NodeKind::Phenotype ? "phenotype" : "genotype") + "," +
             std::to_string(count) + "\n";
  }
  stage.emit("dream/node_counts.csv", nodes);

  std::string links = "from,to,crash_count\n";
  for (const auto& [pair, count] : graph.link_crash_counts())
    links += csv_escape(pair.first) + "," + csv_escape(pair.second) + "," +
             std::to_string(count) + "\n";
  stage.emit("dream/link_counts.csv", links);

  std::string shares = "label,numerator,denominator,fraction\n";
  for (const auto& [label, entry] : graph.taxonomy().entries()) {
    const auto share = graph.factor_share(label);
    if (!share || share->numerator == 0) continue;
    shares += csv_escape(label) + "," + std::to_string(share->numerator) + "," +
              std::to_string(share->denominator) + "," + format_fixed(share->fraction, 4) + "\n";
  }
  stage.emit("dream/factor_shares.csv", shares);

  std::map<std::pair<std::string, std::string>, int> meta_pairs;
  for (const auto& [id, meta] : graph.registry())
    for (const auto& [key, value] : meta) ++meta_pairs[{key, value}];
  std::string meta_csv = "key,value,numerator,denominator,fraction\n";
  for (const auto& [pair, n] : meta_pairs) {
    const auto share = graph.metadata_share(pair.first, pair.second);
    if (!share) continue;
    meta_csv += csv_escape(pair.first) + "," + csv_escape(pair.second) + "," +
                std::to_string(share->numerator) + "," + std::to_string(share->denominator) +
                "," + format_fixed(share->fraction, 4) + "\n";
  }
  stage.emit("dream/metadata_shares.csv", meta_csv);

  stage.say("dream: " + std::to_string(graph.registry().size()) + " crashes, " +
            std::to_string(graph.links().size()) + " links");
}

void stage_report(const Stage& stage, const std::vector<CrashRecord>& records,
                  const std::map<std::string, int>* assignments) {
  const DistributionTable location = location_distribution(records);
  stage.emit("reports/location_distribution.csv", distribution_to_csv(location));
  stage.emit("reports/location_distribution.jsonl", distribution_to_jsonl(location));

  const DistributionTable control = control_type_distribution(records);
  stage.emit("reports/control_type_distribution.csv", distribution_to_csv(control));
  stage.emit("reports/control_type_distribution.jsonl", distribution_to_jsonl(control));

  const DistributionTable severity = severity_distribution(records);
  stage.emit("reports/severity_distribution.csv", distribution_to_csv(severity));
  stage.emit("reports/severity_distribution.jsonl", distribution_to_jsonl(severity));

  stage.emit("reports/damage_heatmap.csv", heatmap_to_csv(damage_heatmap(records)));

  if (assignments != nullptr) {
    std::string csv = "group,severity_code,severity_label,count,percentage\n";
    for (const auto& group : severity_by_scenario(*assignments, records)) {
      for (const auto& row : group.severity.rows)
        csv += csv_escape(group.group) + "," + std::to_string(row.code) + "," +
               csv_escape(row.label) + "," + std::to_string(row.count) + "," +
               format_fixed(round_half_up(row.percentage, 2), 2) + "\n";
    }
    stage.emit("reports/severity_by_scenario.csv", csv);
  }

  stage.say("report: " + std::to_string(records.size()) + " records summarized");
}

Config resolve_config(const RunOptions& options) {
  Config config;
  if (!options.config_path.empty()) {
    config = load_config(options.config_path);
  } else if (const char* env = std::getenv("AVSCEN_CONFIG"); env != nullptr && *env != '\0') {
    config = load_config(env);
  }

  if (options.min_support) config.min_support = *options.min_support;
  if (options.min_confidence) config.min_confidence = *options.min_confidence;
  if (options.min_lift) config.min_lift = *options.min_lift;
  if (options.min_len) config.min_len = *options.min_len;
  if (options.max_len) config.max_len = *options.max_len;
  if (options.threads) config.threads = *options.threads;
  if (options.target_scenario) config.target_scenario = *options.target_scenario;
  if (options.universe) config.universe = *options.universe;
  if (!options.rules_path.empty()) config.rules_path = options.rules_path;
  if (!options.truth_path.empty()) config.truth_path = options.truth_path;
  if (!options.chains_path.empty()) config.chains_path = options.chains_path;

  validate_config(config);
  return config;
}

}  // namespace

std::vector<int> parse_universe_spec(const std::string& spec) {
  std::vector<int> ids;
  for (const auto& part : split(spec, ',')) {
    if (part.empty()) throw Error("bad universe spec '" + spec + "'");
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      const auto id = parse_int(part);
      if (!id) throw Error("bad universe spec '" + spec + "'");
      ids.push_back(static_cast<int>(*id));
    } else {
      const auto lo = parse_int(part.substr(0, dash));
      const auto hi = parse_int(part.substr(dash + 1));
      if (!lo || !hi || *lo > *hi) throw Error("bad universe spec '" + spec + "'");
      for (long long id = *lo; id <= *hi; ++id) ids.push_back(static_cast<int>(id));
    }
  }
  return ids;
}

int run_subcommand(const RunOptions& options) {
  try {
    const Config config = resolve_config(options);
    const FieldCatalog catalog = catalog_for(config);
    std::vector<std::string> log;
    Stage stage{config, catalog, fs::path(options.out_dir), &log};
    fs::create_directories(stage.out);

    const std::string& cmd = options.subcommand;
    if (cmd == "validate") {
      if (options.input_path.empty()) throw Error("no input file given (--input)");
      const ParseResult parsed = parse_records(record_file_for(options.input_path), catalog);
      std::string csv = "line,record_id,message\n";
      for (const auto& d : parsed.diagnostics)
        csv += std::to_string(d.line) + "," + csv_escape(d.record_id) + "," +
               csv_escape(d.message) + "\n";
      stage.emit("reports/validation.csv", csv);
      stage.say("validate: " + std::to_string(parsed.records.size()) + " records ok, " +
                std::to_string(parsed.diagnostics.size()) + " diagnostics");
    } else if (cmd == "ingest") {
      stage_ingest(stage, options.input_path);
    } else if (cmd == "classify") {
      const auto records = read_input(stage, options.input_path, false);
      const RuleSet rules = load_rule_file(stage, options.rules_path);
      stage_classify(stage, records, rules);
    } else if (cmd == "evaluate") {
      const auto records = read_input(stage, options.input_path, false);
      const RuleSet rules = load_rule_file(stage, options.rules_path);
      if (config.truth_path.empty()) throw Error("no truth file given (--truth)");
      const auto assignments = classify_all(records, rules, catalog);
      stage_evaluate(stage, assignments, load_truth(config.truth_path));
    } else if (cmd == "mine") {
      const auto records = read_input(stage, options.input_path, false);
      const RuleSet rules = load_rule_file(stage, options.rules_path);
      stage_mine(stage, records, classify_all(records, rules, catalog));
    } else if (cmd == "dream") {
      stage_dream(stage, options.chains_path);
    } else if (cmd == "report") {
      const auto records = read_input(stage, options.input_path, false);
      if (!config.rules_path.empty() || !options.rules_path.empty()) {
        const RuleSet rules = load_rule_file(stage, options.rules_path);
        const auto assignments = classify_all(records, rules, catalog);
        stage_report(stage, records, &assignments);
      } else {
        stage_report(stage, records, nullptr);
      }
    } else if (cmd == "pipeline") {
      const auto filtered = stage_ingest(stage, options.input_path);
      const RuleSet rules = load_rule_file(stage, options.rules_path);
      const auto assignments = stage_classify(stage, filtered, rules);
      if (!config.truth_path.empty())
        stage_evaluate(stage, assignments, load_truth(config.truth_path));
      stage_mine(stage, filtered, assignments);
      if (!config.chains_path.empty()) stage_dream(stage, options.chains_path);
      stage_report(stage, filtered, &assignments);
    } else {
      throw Error("unknown subcommand '" + cmd + "'");
    }

    std::string run_log;
    for (const auto& line : log) run_log += line + "\n";
    write_file((stage.out / "run.log").string(), run_log);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace avscen
