#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "avscen/io.hpp"
#include "avscen/rules.hpp"
#include "avscen/scenario.hpp"
#include "avscen/util.hpp"
#include "testutil.hpp"

using namespace avscen;

namespace {

RuleSet reference_rules() { return load_rules(test::data_path("rules_reference.rules")); }

CrashRecord rear_end_base(const std::string& id) {
  CrashRecord r = test::valid_record(id);
  r.crash_type = 3;
  r.relative_position = 1;
  r.type_of_object_collided = 2;
  r.front_vehicle = 1;
  return r;
}

}  // namespace

TEST_CASE("stationary lead vehicle maps to LVS") {
  CrashRecord r = rear_end_base("L1");
  r.direction_v1 = 0;  // AV in front, stopped
  r.direction_v2 = 1;
  const ClassifyResult result = classify(r, reference_rules());
  CHECK(result.scenario == 24);
  REQUIRE(result.match.has_value());
  CHECK(result.match->rule_id == "rear-end-lvs-av-lead");
  CHECK(result.match->satisfied.size() == 5);
  CHECK_FALSE(result.match->low_confidence);
}

TEST_CASE("decelerating lead maps to LVD") {
  CrashRecord r = rear_end_base("L2");
  r.direction_v1 = 1;
  r.speed_change_v1 = 2;
  r.direction_v2 = 1;
  CHECK(classify(r, reference_rules()).scenario == 23);
}

TEST_CASE("record matching no rule falls to the default with an empty trace") {
  CrashRecord r = test::valid_record("L3");
  r.crash_type = 8;
  const ClassifyResult result = classify(r, reference_rules());
  CHECK(result.scenario == 36);
  CHECK_FALSE(result.match.has_value());
}

TEST_CASE("VRU assignments carry the low-confidence flag") {
  CrashRecord r = test::valid_record("L4");
  r.type_of_object_collided = 3;
  r.crash_type = 7;
  const ClassifyResult result = classify(r, reference_rules());
  CHECK(result.scenario == 12);
  REQUIRE(result.match.has_value());
  CHECK(result.match->low_confidence);
}

TEST_CASE("higher priority wins; ties go to file order") {
  const std::string rules_text =
      R"({"rule_id":"low","priority":10,"scenario":14,"when":[{"field":"crash_type","op":"equals","value":3}]})"
      "\n"
      R"({"rule_id":"first","priority":20,"scenario":15,"when":[{"field":"crash_type","op":"equals","value":3}]})"
      "\n"
      R"({"rule_id":"second","priority":20,"scenario":16,"when":[{"field":"crash_type","op":"equals","value":3}]})"
      "\n";
  const RuleSet rules = load_rules_text(rules_text);
  const ClassifyResult result = classify(test::valid_record(), rules);
  CHECK(result.scenario == 15);
  CHECK(result.match->rule_id == "first");
}

TEST_CASE("adding a lower-priority rule never changes an existing match") {
  std::mt19937 rng(17);
  RuleSet rules = reference_rules();
  for (int i = 0; i < 300; ++i) {
    const CrashRecord r = test::random_valid_record(rng, "Q" + std::to_string(i));
    const ClassifyResult before = classify(r, rules);
    if (!before.match.has_value()) continue;
    RuleSet extended = rules;
    MappingRule extra;
    extra.rule_id = "weaker";
    extra.priority = before.match->priority - 1;
    extra.scenario = 19;
    extra.predicates.push_back({"crash_type", PredicateOp::Equals, {r.crash_type}});
    extended.rules.push_back(extra);
    const ClassifyResult after = classify(r, extended);
    CHECK(after.scenario == before.scenario);
    CHECK(after.match->rule_id == before.match->rule_id);
  }
}

TEST_CASE("classification is pure and deterministic across threads") {
  const RuleSet rules = reference_rules();
  std::mt19937 rng(23);
  std::vector<CrashRecord> records;
  for (int i = 0; i < 64; ++i)
    records.push_back(test::random_valid_record(rng, "C" + std::to_string(i)));
  const std::map<std::string, int> expected = classify_all(records, rules);

  std::vector<std::map<std::string, int>> results(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] { results[t] = classify_all(records, rules); });
  for (auto& th : pool) th.join();
  for (const auto& r : results) CHECK(r == expected);
}

TEST_CASE("predicate operators cover presence and set membership") {
  const std::string text =
      R"({"rule_id":"p","priority":5,"scenario":14,"when":[{"field":"traffic_control_type","op":"absent"},{"field":"weather","op":"in-set","values":[1,2]},{"field":"crash_type","op":"not-equals","value":8}]})"
      "\n";
  const RuleSet rules = load_rules_text(text);
  CrashRecord r = test::valid_record();
  r.crash_type = 3;
  CHECK(classify(r, rules).scenario == 14);
  r.weather = 3;
  CHECK(classify(r, rules).scenario == 36);
  r.weather = 1;
  r.crash_type = 8;
  CHECK(classify(r, rules).scenario == 36);
}

TEST_CASE("rule load errors name the offending line") {
  using doctest::Contains;
  CHECK_THROWS_WITH_AS(load_rules_text("{\"rule_id\":\"x\"}\n"), Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(
      load_rules_text(
          "# comment\n"
          R"({"rule_id":"x","priority":1,"scenario":14,"when":[{"field":"no_such","op":"equals","value":1}]})"
          "\n"),
      Contains("line 2: unknown field 'no_such'"), Error);
  CHECK_THROWS_WITH_AS(
      load_rules_text(
          R"({"rule_id":"x","priority":1,"scenario":14,"when":[{"field":"weather","op":"equals","value":99}]})"
          "\n"),
      Contains("outside the code set"), Error);
  CHECK_THROWS_WITH_AS(
      load_rules_text(
          R"({"rule_id":"x","priority":1,"scenario":40,"when":[{"field":"weather","op":"equals","value":1}]})"
          "\n"),
      Contains("outside [1, 36]"), Error);
  CHECK_THROWS_WITH_AS(
      load_rules_text(
          R"({"rule_id":"x","priority":1,"scenario":14,"when":[{"field":"weather","op":"equals","value":1},{"field":"weather","op":"equals","value":2}]})"
          "\n"),
      Contains("contradictory equals"), Error);
  CHECK_THROWS_WITH_AS(
      load_rules_text(R"({"rule_id":"x","priority":1,"scenario":14,"when":[]})" "\n"),
      Contains("non-empty"), Error);
  CHECK_THROWS_WITH_AS(
      load_rules_text(
          R"({"rule_id":"x","priority":1,"scenario":14,"when":[{"field":"weather","op":"absent"}]})"
          "\n"),
      Contains("never absent"), Error);
}

TEST_CASE("every record receives exactly one scenario") {
  std::mt19937 rng(31);
  const RuleSet rules = reference_rules();
  for (int i = 0; i < 500; ++i) {
    const CrashRecord r = test::random_valid_record(rng, "E" + std::to_string(i));
    const ClassifyResult result = classify(r, rules);
    CHECK(scenario_id_valid(result.scenario));
  }
}

TEST_CASE("evaluate: exact predictions give accuracy 1, far 0, mar 0") {
  std::map<std::string, int> maps = {{"a", 24}, {"b", 20}, {"c", 36}};
  const EvaluationReport report = evaluate(maps, maps);
  CHECK(report.accuracy == doctest::Approx(1.0));
  CHECK(report.far == doctest::Approx(0.0));
  CHECK(report.mar == doctest::Approx(0.0));
  CHECK(report.correct == 3);
}

TEST_CASE("evaluate: one false and one fallthrough miss on ten records") {
  std::map<std::string, int> truth, predicted;
  for (int i = 0; i < 10; ++i) {
    const std::string id = "r" + std::to_string(i);
    truth[id] = 24;
    predicted[id] = 24;
  }
  predicted["r0"] = 23;  // wrong non-default: false
  predicted["r1"] = 36;  // fell to the default: missed for 24
  const EvaluationReport report = evaluate(predicted, truth);
  CHECK(report.far == doctest::Approx(0.1));
  CHECK(report.mar == doctest::Approx(0.1));
  CHECK(report.accuracy == doctest::Approx(0.8));
  CHECK(report.missed_per_scenario.at(24) == 1);
}

TEST_CASE("evaluate: a default-class record grabbed by a rule is false and missed") {
  std::map<std::string, int> truth = {{"a", 36}, {"b", 24}};
  std::map<std::string, int> predicted = {{"a", 20}, {"b", 24}};
  const EvaluationReport report = evaluate(predicted, truth);
  CHECK(report.false_count == 1);
  CHECK(report.missed_per_scenario.at(36) == 1);
  CHECK(report.correct == 1);
  // the three rates deliberately exceed 1 in sum here
  CHECK(report.far + report.mar + report.accuracy > 1.0);
}

TEST_CASE("evaluate aborts on key-set mismatch naming ids") {
  std::map<std::string, int> predicted = {{"a", 1}, {"b", 2}};
  std::map<std::string, int> truth = {{"a", 1}, {"c", 2}};
  CHECK_THROWS_WITH_AS(evaluate(predicted, truth), doctest::Contains("only predicted: b"),
                       Error);
}

TEST_CASE("frequency table sorts by count then scenario id") {
  std::map<std::string, int> assignments = {{"a", 20}, {"b", 14}, {"c", 14},
                                            {"d", 24}, {"e", 24}, {"f", 16}};
  const auto table = scenario_frequency_table(assignments);
  REQUIRE(table.size() == 4);
  CHECK(table[0].scenario == 14);  // count 2, lower id first
  CHECK(table[1].scenario == 24);  // count 2
  CHECK(table[2].scenario == 16);  // count 1
  CHECK(table[3].scenario == 20);
  double sum = 0;
  for (const auto& row : table) sum += row.percentage;
  CHECK(sum == doctest::Approx(100.0));
  CHECK(scenario_frequency_table({}).empty());
}

TEST_CASE("bundled corpus classifies exactly to its construction labels") {
  const ParseResult corpus = parse_records(record_file_for(test::data_path("corpus_322.csv")));
  REQUIRE(corpus.records.size() == 322);
  const RuleSet rules = reference_rules();
  const auto assignments = classify_all(corpus.records, rules);

  std::map<std::string, int> truth;
  const auto lines = split(read_file(test::data_path("labels_322.csv")), '\n');
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    truth[cells[0]] = static_cast<int>(*parse_int(cells[1]));
  }
  REQUIRE(truth.size() == 322);
  CHECK(assignments == truth);
}
