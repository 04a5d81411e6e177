#pragma once

#include <map>
#include <string>
#include <vector>

#include "avscen/model.hpp"

namespace avscen {

enum class RecordFileFormat {
  DelimitedTable,         // UTF-8, comma separated, one header row, absent = empty cell
  RecordPerLineStructured // one JSON object per line, field-name/value pairs
};

struct RecordFile {
  std::string path;
  RecordFileFormat format = RecordFileFormat::DelimitedTable;
};

/// Picks the format from the file extension: .jsonl/.ndjson are structured,
/// anything else is the delimited table.
RecordFile record_file_for(const std::string& path);

/// Canonical column order of the delimited format (also the JSON key order).
const std::vector<std::string>& canonical_columns();

struct Diagnostic {
  int line = 0;           // 1-based file line (header is line 1)
  std::string record_id;  // empty when the id itself could not be read
  std::string message;
};

struct ParseResult {
  std::vector<CrashRecord> records;
  std::vector<Diagnostic> diagnostics;
};

/// Parses a record file. Every parseable and valid row yields a record; rows
/// with unparseable values, duplicate ids, or validation violations yield
/// diagnostics instead, in row order. Aborts (Error) only on an unreadable
/// file or a malformed header.
ParseResult parse_records(const RecordFile& file,
                          const FieldCatalog& catalog = FieldCatalog::standard());

/// Same, over in-memory content (used by tests and the round-trip property).
ParseResult parse_records_text(const std::string& content, RecordFileFormat format,
                               const FieldCatalog& catalog = FieldCatalog::standard());

std::string to_delimited(const std::vector<CrashRecord>& records);
std::string to_jsonl(const std::vector<CrashRecord>& records);

struct FilterReport {
  int input = 0;
  int retained = 0;
  int removed_mode = 0;           // v1_mode != autonomous engaged
  int removed_vehicle_count = 0;  // involved_vehicles != 2
};

struct FilterResult {
  std::vector<CrashRecord> retained;
  FilterReport report;
};

/// Keeps records with autonomous mode engaged and exactly two vehicles
/// involved. A record failing both criteria is counted under both.
FilterResult filter_for_analysis(const std::vector<CrashRecord>& records);

/// Per calendar year, counts by other-party type (decoded from
/// type_of_object_collided). Counts within a year sum to the year's total.
std::map<int, std::map<std::string, int>> annual_party_distribution(
    const std::vector<CrashRecord>& records);

}  // namespace avscen
