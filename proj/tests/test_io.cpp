#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "avscen/io.hpp"
#include "avscen/util.hpp"
#include "testutil.hpp"

using namespace avscen;

namespace {

std::string three_row_csv() {
  std::vector<CrashRecord> records = {test::valid_record("A1"), test::valid_record("A2"),
                                      test::valid_record("A3")};
  return to_delimited(records);
}

}  // namespace

TEST_CASE("three valid rows parse to three records with no diagnostics") {
  const ParseResult result =
      parse_records_text(three_row_csv(), RecordFileFormat::DelimitedTable);
  CHECK(result.records.size() == 3);
  CHECK(result.diagnostics.empty());
}

TEST_CASE("non-numeric lighting code yields a diagnostic, not a record") {
  std::string csv = three_row_csv();
  const auto lighting_col = std::find(canonical_columns().begin(), canonical_columns().end(),
                                      "lighting") -
                            canonical_columns().begin();
  auto lines = split(csv, '\n');
  auto cells = split(lines[2], ',');
  cells[lighting_col] = "bright";
  lines[2] = join(cells, ",");
  const ParseResult result =
      parse_records_text(join(lines, "\n"), RecordFileFormat::DelimitedTable);
  CHECK(result.records.size() == 2);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].line == 3);
  CHECK(result.diagnostics[0].message == "lighting: not a code");
}

TEST_CASE("duplicate record_id is a diagnostic, never a silent dedup") {
  std::vector<CrashRecord> records = {test::valid_record("A1"), test::valid_record("A1")};
  const ParseResult result =
      parse_records_text(to_delimited(records), RecordFileFormat::DelimitedTable);
  CHECK(result.records.size() == 1);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].message.find("duplicate") != std::string::npos);
}

TEST_CASE("malformed headers abort naming the defect") {
  CHECK_THROWS_WITH_AS(parse_records_text("", RecordFileFormat::DelimitedTable),
                       doctest::Contains("empty"), Error);
  CHECK_THROWS_WITH_AS(parse_records_text("record_id,bogus\n", RecordFileFormat::DelimitedTable),
                       doctest::Contains("unknown column 'bogus'"), Error);
  std::string csv = three_row_csv();
  auto lines = split(csv, '\n');
  lines[0] = lines[0].substr(lines[0].find(',') + 1);  // drop record_id
  CHECK_THROWS_WITH_AS(parse_records_text(join(lines, "\n"), RecordFileFormat::DelimitedTable),
                       doctest::Contains("missing column 'record_id'"), Error);
}

TEST_CASE("unreadable file aborts") {
  CHECK_THROWS_AS(parse_records({"/nonexistent/nope.csv", RecordFileFormat::DelimitedTable}),
                  Error);
}

TEST_CASE("validation violations surface as row diagnostics") {
  CrashRecord bad = test::valid_record("B1");
  bad.weather = 9;
  const ParseResult result =
      parse_records_text(to_delimited({bad}), RecordFileFormat::DelimitedTable);
  CHECK(result.records.empty());
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].record_id == "B1");
  CHECK(result.diagnostics[0].message.find("weather") == 0);
}

TEST_CASE("round-trip: parse, serialize, parse is the identity (both formats)") {
  std::mt19937 rng(11);
  std::vector<CrashRecord> records;
  for (int i = 0; i < 60; ++i)
    records.push_back(test::random_valid_record(rng, "P" + std::to_string(1000 + i)));

  const ParseResult csv_once =
      parse_records_text(to_delimited(records), RecordFileFormat::DelimitedTable);
  REQUIRE(csv_once.diagnostics.empty());
  const ParseResult csv_twice =
      parse_records_text(to_delimited(csv_once.records), RecordFileFormat::DelimitedTable);
  CHECK(csv_once.records == csv_twice.records);
  CHECK(csv_once.records == records);

  const ParseResult json_once =
      parse_records_text(to_jsonl(records), RecordFileFormat::RecordPerLineStructured);
  REQUIRE(json_once.diagnostics.empty());
  CHECK(json_once.records == records);
  const ParseResult json_twice =
      parse_records_text(to_jsonl(json_once.records), RecordFileFormat::RecordPerLineStructured);
  CHECK(json_once.records == json_twice.records);
}

TEST_CASE("structured format reports unknown fields and bad rows") {
  const std::string lines =
      "{\"record_id\":\"J1\",\"report_date\":\"2022-01-01\",\"mystery\":1}\n"
      "not json\n";
  const ParseResult result =
      parse_records_text(lines, RecordFileFormat::RecordPerLineStructured);
  CHECK(result.records.empty());
  CHECK(result.diagnostics.size() >= 2);
}

TEST_CASE("filter keeps autonomous two-vehicle records and counts removals") {
  CrashRecord keep = test::valid_record("K1");
  CrashRecord conventional = test::valid_record("K2");
  conventional.v1_mode = 3;
  CrashRecord single = test::valid_record("K3");
  single.involved_vehicles = 1;
  CrashRecord both = test::valid_record("K4");
  both.v1_mode = 2;
  both.involved_vehicles = 3;

  const FilterResult result = filter_for_analysis({keep, conventional, single, both});
  CHECK(result.retained.size() == 1);
  CHECK(result.retained[0].record_id == "K1");
  CHECK(result.report.input == 4);
  CHECK(result.report.retained == 1);
  CHECK(result.report.removed_mode == 2);
  CHECK(result.report.removed_vehicle_count == 2);
}

TEST_CASE("filter output partitions the input") {
  std::mt19937 rng(13);
  std::vector<CrashRecord> records;
  for (int i = 0; i < 200; ++i) {
    CrashRecord r = test::random_valid_record(rng, "F" + std::to_string(i));
    r.v1_mode = 1 + i % 3;
    r.involved_vehicles = 1 + i % 4;
    records.push_back(r);
  }
  const FilterResult result = filter_for_analysis(records);
  CHECK(result.retained.size() <= records.size());
  int removed = 0;
  for (const auto& r : records)
    if (r.v1_mode != 1 || r.involved_vehicles != 2) ++removed;
  CHECK(static_cast<int>(result.retained.size()) + removed ==
        static_cast<int>(records.size()));
  for (const auto& r : result.retained) {
    CHECK(r.v1_mode == 1);
    CHECK(r.involved_vehicles == 2);
  }
}

TEST_CASE("bundled raw corpus parses to 615 records and screens to 322") {
  const ParseResult parsed = parse_records(record_file_for(test::data_path("corpus_615.csv")));
  CHECK(parsed.records.size() == 615);
  CHECK(parsed.diagnostics.empty());
  const FilterResult filtered = filter_for_analysis(parsed.records);
  CHECK(filtered.retained.size() == 322);
  CHECK(filtered.report.removed_mode == 230);
  CHECK(filtered.report.removed_vehicle_count == 63);

  // The screened corpus is bundled verbatim.
  const ParseResult corpus = parse_records(record_file_for(test::data_path("corpus_322.csv")));
  CHECK(corpus.records == filtered.retained);
}

TEST_CASE("raw corpus rows with alias lighting code 5 normalize to 3") {
  const std::string raw = read_file(test::data_path("corpus_615.csv"));
  int alias_rows = 0;
  const auto lines = split(raw, '\n');
  const auto cols = canonical_columns();
  const std::size_t lighting_col =
      std::find(cols.begin(), cols.end(), "lighting") - cols.begin();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    if (split(lines[i], ',')[lighting_col] == "5") ++alias_rows;
  }
  CHECK(alias_rows == 3);
  const ParseResult parsed = parse_records_text(raw, RecordFileFormat::DelimitedTable);
  for (const auto& r : parsed.records) CHECK(r.lighting != 5);
}

TEST_CASE("annual party distribution sums per year and buckets by party") {
  CHECK(annual_party_distribution({}).empty());

  std::vector<CrashRecord> one_year;
  for (int i = 0; i < 4; ++i) {
    CrashRecord r = test::valid_record("Y" + std::to_string(i));
    r.report_date = {2020, 3, 1 + i};
    one_year.push_back(r);
  }
  const auto dist = annual_party_distribution(one_year);
  REQUIRE(dist.size() == 1);
  CHECK(dist.at(2020).at("Vehicle") == 4);
}

TEST_CASE("2023 corpus slice is heavy on non-motorized and object parties") {
  const ParseResult corpus = parse_records(record_file_for(test::data_path("corpus_322.csv")));
  const auto dist = annual_party_distribution(corpus.records);
  REQUIRE(dist.count(2023) == 1);
  const auto& y2023 = dist.at(2023);
  int total = 0, vulnerable = 0;
  for (const auto& [party, count] : y2023) {
    total += count;
    if (party == "Non-motorized vehicle" || party == "Object") vulnerable += count;
  }
  CHECK(total > 0);
  CHECK(static_cast<double>(vulnerable) / total > 0.20);
}
