#include "avscen/rules.hpp"

#include <algorithm>

#include <json.hpp>

#include "avscen/scenario.hpp"
#include "avscen/util.hpp"

namespace avscen {

namespace {

using nlohmann::json;

const char* op_name(PredicateOp op) {
  switch (op) {
    case PredicateOp::Equals: return "equals";
    case PredicateOp::NotEquals: return "not-equals";
    case PredicateOp::InSet: return "in-set";
    case PredicateOp::Absent: return "absent";
    case PredicateOp::Present: return "present";
  }
  return "?";
}

std::optional<PredicateOp> op_from_name(const std::string& name) {
  if (name == "equals") return PredicateOp::Equals;
  if (name == "not-equals") return PredicateOp::NotEquals;
  if (name == "in-set") return PredicateOp::InSet;
  if (name == "absent") return PredicateOp::Absent;
  if (name == "present") return PredicateOp::Present;
  return std::nullopt;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error("rules line " + std::to_string(line) + ": " + message);
}

FieldPredicate parse_predicate(const json& obj, int line, const FieldCatalog& catalog) {
  if (!obj.is_object()) fail(line, "predicate is not an object");
  if (!obj.contains("field") || !obj["field"].is_string()) fail(line, "predicate without field");
  if (!obj.contains("op") || !obj["op"].is_string()) fail(line, "predicate without op");

  FieldPredicate pred;
  pred.field = obj["field"].get<std::string>();
  const FieldSpec* field = catalog.find(pred.field);
  if (field == nullptr) fail(line, "unknown field '" + pred.field + "'");

  const auto op = op_from_name(obj["op"].get<std::string>());
  if (!op) fail(line, "unknown op '" + obj["op"].get<std::string>() + "'");
  pred.op = *op;

  auto check_value = [&](int v) {
    if (!field->code_valid(v))
      fail(line, "value " + std::to_string(v) + " outside the code set of '" + pred.field + "'");
  };

  switch (pred.op) {
    case PredicateOp::Equals:
    case PredicateOp::NotEquals: {
      if (!obj.contains("value") || !obj["value"].is_number_integer())
        fail(line, std::string(op_name(pred.op)) + " requires an integer 'value'");
      const int v = obj["value"].get<int>();
      check_value(v);
      pred.values = {v};
      break;
    }
    case PredicateOp::InSet: {
      if (!obj.contains("values") || !obj["values"].is_array() || obj["values"].empty())
        fail(line, "in-set requires a non-empty 'values' array");
      for (const auto& item : obj["values"]) {
        if (!item.is_number_integer()) fail(line, "in-set values must be integers");
        const int v = item.get<int>();
        check_value(v);
        pred.values.push_back(v);
      }
      std::sort(pred.values.begin(), pred.values.end());
      pred.values.erase(std::unique(pred.values.begin(), pred.values.end()), pred.values.end());
      break;
    }
    case PredicateOp::Absent:
    case PredicateOp::Present:
      if (obj.contains("value") || obj.contains("values"))
        fail(line, std::string(op_name(pred.op)) + " carries no value");
      if (field->kind != FieldKind::OptionalCode)
        fail(line, "'" + pred.field + "' is never absent");
      break;
  }
  return pred;
}

}  // namespace

bool FieldPredicate::holds(const CrashRecord& record, const FieldCatalog& catalog) const {
  const FieldSpec* spec = catalog.find(field);
  if (spec == nullptr) return false;  // load-time checks make this unreachable
  const std::optional<int> value = spec->get(record);
  switch (op) {
    case PredicateOp::Equals:
      return value.has_value() && *value == values.front();
    case PredicateOp::NotEquals:
      return value.has_value() && *value != values.front();
    case PredicateOp::InSet:
      return value.has_value() &&
             std::binary_search(values.begin(), values.end(), *value);
    case PredicateOp::Absent:
      return !value.has_value();
    case PredicateOp::Present:
      return value.has_value();
  }
  return false;
}

std::string FieldPredicate::render() const {
  std::string out = field + " " + op_name(op);
  if (op == PredicateOp::Equals || op == PredicateOp::NotEquals)
    out += " " + std::to_string(values.front());
  if (op == PredicateOp::InSet) {
    std::vector<std::string> parts;
    for (int v : values) parts.push_back(std::to_string(v));
    out += " {" + join(parts, ",") + "}";
  }
  return out;
}

RuleSet load_rules(const std::string& path, const FieldCatalog& catalog) {
  return load_rules_text(read_file(path), catalog);
}

RuleSet load_rules_text(const std::string& content, const FieldCatalog& catalog) {
  RuleSet set;
  int line_no = 0;
  std::string line;
  std::size_t start = 0;
  while (start <= content.size()) {
    const std::size_t end = content.find('\n', start);
    line = content.substr(start, end == std::string::npos ? std::string::npos : end - start);
    start = end == std::string::npos ? content.size() + 1 : end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) fail(line_no, "not a JSON object");

    MappingRule rule;
    if (!obj.contains("rule_id") || !obj["rule_id"].is_string() ||
        obj["rule_id"].get<std::string>().empty())
      fail(line_no, "missing rule_id");
    rule.rule_id = obj["rule_id"].get<std::string>();

    if (!obj.contains("priority") || !obj["priority"].is_number_integer())
      fail(line_no, "missing integer priority");
    rule.priority = obj["priority"].get<int>();

    if (!obj.contains("scenario") || !obj["scenario"].is_number_integer())
      fail(line_no, "missing integer scenario");
    rule.scenario = obj["scenario"].get<int>();
    if (!scenario_id_valid(rule.scenario))
      fail(line_no, "scenario " + std::to_string(rule.scenario) + " outside [1, 36]");

    if (!obj.contains("when") || !obj["when"].is_array() || obj["when"].empty())
      fail(line_no, "rule needs a non-empty 'when' array");
    for (const auto& p : obj["when"]) rule.predicates.push_back(parse_predicate(p, line_no, catalog));

    // Contradictory conjunctions can never match; reject them at load time.
    for (std::size_t i = 0; i < rule.predicates.size(); ++i) {
      const auto& a = rule.predicates[i];
      if (a.op != PredicateOp::Equals) continue;
      for (std::size_t j = i + 1; j < rule.predicates.size(); ++j) {
        const auto& b = rule.predicates[j];
        if (b.op == PredicateOp::Equals && a.field == b.field &&
            a.values.front() != b.values.front())
          fail(line_no, "contradictory equals on '" + a.field + "'");
      }
    }

    set.rules.push_back(std::move(rule));
  }
  return set;
}

ClassifyResult classify(const CrashRecord& record, const RuleSet& rules,
                        const FieldCatalog& catalog) {
  const MappingRule* best = nullptr;
  for (const auto& rule : rules.rules) {
    if (best != nullptr && rule.priority <= best->priority) continue;
    const bool all_hold = std::all_of(rule.predicates.begin(), rule.predicates.end(),
                                      [&](const FieldPredicate& p) { return p.holds(record, catalog); });
    if (all_hold) best = &rule;
  }

  if (best == nullptr) return {rules.default_scenario, std::nullopt};

  RuleMatch match;
  match.rule_id = best->rule_id;
  match.priority = best->priority;
  for (const auto& p : best->predicates) match.satisfied.push_back(p.render());
  match.low_confidence = scenario_low_confidence(best->scenario);
  return {best->scenario, match};
}

std::map<std::string, int> classify_all(const std::vector<CrashRecord>& records,
                                        const RuleSet& rules, const FieldCatalog& catalog) {
  std::map<std::string, int> out;
  for (const auto& r : records) out[r.record_id] = classify(r, rules, catalog).scenario;
  return out;
}

EvaluationReport evaluate(const std::map<std::string, int>& predicted,
                          const std::map<std::string, int>& ground_truth, int default_scenario) {
  std::vector<std::string> only_predicted, only_truth;
  for (const auto& [id, s] : predicted)
    if (ground_truth.count(id) == 0) only_predicted.push_back(id);
  for (const auto& [id, s] : ground_truth)
    if (predicted.count(id) == 0) only_truth.push_back(id);
  if (!only_predicted.empty() || !only_truth.empty()) {
    auto preview = [](const std::vector<std::string>& ids) {
      std::vector<std::string> head(ids.begin(),
                                    ids.begin() + std::min<std::size_t>(ids.size(), 5));
      return join(head, ", ") + (ids.size() > 5 ? ", ..." : "");
    };
    std::string msg = "record id sets differ:";
    if (!only_predicted.empty()) msg += " only predicted: " + preview(only_predicted) + ";";
    if (!only_truth.empty()) msg += " only ground truth: " + preview(only_truth) + ";";
    throw Error(msg);
  }

  EvaluationReport report;
  report.total = static_cast<int>(predicted.size());
  for (const auto& [id, pred] : predicted) {
    const int truth = ground_truth.at(id);
    if (pred == truth) {
      ++report.correct;
      continue;
    }
    if (pred != default_scenario) ++report.false_count;
    if (pred == default_scenario)
      ++report.missed_per_scenario[truth];  // fell through to the default
    else if (truth == default_scenario)
      ++report.missed_per_scenario[truth];  // default-class record grabbed by a rule
  }

  if (report.total > 0) {
    int missed = 0;
    for (const auto& [id, n] : report.missed_per_scenario) missed += n;
    const double total = report.total;
    report.far = report.false_count / total;
    report.mar = missed / total;
    report.accuracy = report.correct / total;
  }
  return report;
}

std::vector<FrequencyRow> scenario_frequency_table(const std::map<std::string, int>& assignments) {
  std::map<int, int> counts;
  for (const auto& [id, scenario] : assignments) ++counts[scenario];

  std::vector<FrequencyRow> rows;
  rows.reserve(counts.size());
  const double total = static_cast<double>(assignments.size());
  for (const auto& [scenario, count] : counts)
    rows.push_back({scenario, count, total > 0 ? count / total * 100.0 : 0.0});

  std::sort(rows.begin(), rows.end(), [](const FrequencyRow& a, const FrequencyRow& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.scenario < b.scenario;
  });
  return rows;
}

}  // namespace avscen
