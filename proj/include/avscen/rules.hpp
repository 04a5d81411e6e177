#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avscen/model.hpp"
#include "avscen/scenario.hpp"

namespace avscen {

enum class PredicateOp { Equals, NotEquals, InSet, Absent, Present };

/// One conjunct of a mapping rule. equals / not-equals / in-set require the
/// field to be present; absent / present test presence of optional fields.
struct FieldPredicate {
  std::string field;
  PredicateOp op = PredicateOp::Equals;
  std::vector<int> values;  // one value for equals/not-equals, none for absent/present

  bool holds(const CrashRecord& record, const FieldCatalog& catalog) const;
  std::string render() const;
};

struct MappingRule {
  std::string rule_id;
  int priority = 0;  // larger wins; ties broken by file position
  int scenario = 0;
  std::vector<FieldPredicate> predicates;
};

struct RuleSet {
  std::vector<MappingRule> rules;  // file order
  int default_scenario = kScenarioOther;
};

/// Loads a rule file: one JSON object per line, '#' comments and blank lines
/// allowed. Any defect (unknown field, out-of-range code, contradictory
/// equals, bad shape) aborts with the offending line number.
RuleSet load_rules(const std::string& path,
                   const FieldCatalog& catalog = FieldCatalog::standard());
RuleSet load_rules_text(const std::string& content,
                        const FieldCatalog& catalog = FieldCatalog::standard());

struct RuleMatch {
  std::string rule_id;
  int priority = 0;
  std::vector<std::string> satisfied;  // rendered predicates of the winning rule
  bool low_confidence = false;         // VRU scenarios warrant manual check
};

struct ClassifyResult {
  int scenario = kScenarioOther;
  std::optional<RuleMatch> match;  // empty when the default applied
};

/// Applies the highest-priority rule whose every predicate holds; falls back
/// to the default scenario with an empty trace. Pure: identical results for
/// repeated and concurrent calls.
ClassifyResult classify(const CrashRecord& record, const RuleSet& rules,
                        const FieldCatalog& catalog = FieldCatalog::standard());

std::map<std::string, int> classify_all(const std::vector<CrashRecord>& records,
                                        const RuleSet& rules,
                                        const FieldCatalog& catalog = FieldCatalog::standard());

struct EvaluationReport {
  int total = 0;
  int correct = 0;
  int false_count = 0;
  std::map<int, int> missed_per_scenario;
  double far = 0.0;
  double mar = 0.0;
  double accuracy = 0.0;
};

/// Scores predictions against ground truth over an identical record-id set.
///
/// Counting follows the scenario-identification indicators: a record
/// assigned a wrong non-default scenario is false; a record that fell to the
/// default while its true scenario has rules is missed for that scenario; a
/// default-class record grabbed by a rule is missed for the default class
/// (and also false), so the three rates need not partition the total.
EvaluationReport evaluate(const std::map<std::string, int>& predicted,
                          const std::map<std::string, int>& ground_truth,
                          int default_scenario = kScenarioOther);

struct FrequencyRow {
  int scenario = 0;
  int count = 0;
  double percentage = 0.0;  // full precision; round at emission
};

/// Counts per scenario, sorted by count descending then scenario ascending.
std::vector<FrequencyRow> scenario_frequency_table(const std::map<std::string, int>& assignments);

}  // namespace avscen
