#include "avscen/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "avscen/util.hpp"

namespace avscen {

namespace {

using nlohmann::json;

using Setter = void (*)(CrashRecord&, int);

struct ColumnSpec {
  const char* name;
  Setter set;
  bool optional;
};

void set_optional_control(CrashRecord& r, int v) { r.traffic_control_type = v; }
void set_optional_intersection(CrashRecord& r, int v) { r.type_of_intersection = v; }
void set_optional_yield(CrashRecord& r, int v) { r.v1_yield_for = v; }

const std::vector<ColumnSpec>& column_specs() {
  static const std::vector<ColumnSpec> cols = {
      {"location_type", +[](CrashRecord& r, int v) { r.location_type = v; }, false},
      {"weather", +[](CrashRecord& r, int v) { r.weather = v; }, false},
      {"crash_type", +[](CrashRecord& r, int v) { r.crash_type = v; }, false},
      {"roadway_surface", +[](CrashRecord& r, int v) { r.roadway_surface = v; }, false},
      {"roadway_conditions", +[](CrashRecord& r, int v) { r.roadway_conditions = v; }, false},
      {"traffic_control_type", &set_optional_control, true},
      {"lighting", +[](CrashRecord& r, int v) { r.lighting = normalize_lighting(v); }, false},
      {"type_of_intersection", &set_optional_intersection, true},
      {"if_peak_time", +[](CrashRecord& r, int v) { r.if_peak_time = v; }, false},
      {"movement_preceding_v1", +[](CrashRecord& r, int v) { r.movement_preceding_v1 = v; }, false},
      {"movement_preceding_v2", +[](CrashRecord& r, int v) { r.movement_preceding_v2 = v; }, false},
      {"v1_intention", +[](CrashRecord& r, int v) { r.v1_intention = v; }, false},
      {"v1_yield_for", &set_optional_yield, true},
      {"cycle_lane", +[](CrashRecord& r, int v) { r.cycle_lane = v; }, false},
      {"lane_markings", +[](CrashRecord& r, int v) { r.lane_markings = v; }, false},
      {"road_types", +[](CrashRecord& r, int v) { r.road_types = v; }, false},
      {"roadside_parking", +[](CrashRecord& r, int v) { r.roadside_parking = v != 0; }, false},
      {"number_of_lanes_one_direction",
       +[](CrashRecord& r, int v) { r.number_of_lanes_one_direction = v; }, false},
      {"v1_mode", +[](CrashRecord& r, int v) { r.v1_mode = v; }, false},
      {"v1_state", +[](CrashRecord& r, int v) { r.v1_state = v; }, false},
      {"involved_vehicles", +[](CrashRecord& r, int v) { r.involved_vehicles = v; }, false},
      {"type_of_object_collided",
       +[](CrashRecord& r, int v) { r.type_of_object_collided = v; }, false},
      {"direction_v1", +[](CrashRecord& r, int v) { r.direction_v1 = v; }, false},
      {"direction_v2", +[](CrashRecord& r, int v) { r.direction_v2 = v; }, false},
      {"speed_change_v1", +[](CrashRecord& r, int v) { r.speed_change_v1 = v; }, false},
      {"speed_change_v2", +[](CrashRecord& r, int v) { r.speed_change_v2 = v; }, false},
      {"if_vehicle_failure", +[](CrashRecord& r, int v) { r.if_vehicle_failure = v != 0; }, false},
      {"movement_turn_v1", +[](CrashRecord& r, int v) { r.movement_turn_v1 = v; }, false},
      {"movement_turn_v2", +[](CrashRecord& r, int v) { r.movement_turn_v2 = v; }, false},
      {"movement_other_v1", +[](CrashRecord& r, int v) { r.movement_other_v1 = v; }, false},
      {"movement_other_v2", +[](CrashRecord& r, int v) { r.movement_other_v2 = v; }, false},
      {"relative_position", +[](CrashRecord& r, int v) { r.relative_position = v; }, false},
      {"front_vehicle", +[](CrashRecord& r, int v) { r.front_vehicle = v; }, false},
      {"damage_severity", +[](CrashRecord& r, int v) { r.damage_severity = v; }, false},
  };
  return cols;
}

const ColumnSpec* column_spec(const std::string& name) {
  for (const auto& c : column_specs())
    if (name == c.name) return &c;
  return nullptr;
}

std::optional<Date> parse_date(const std::string& text) {
  const auto parts = split(text, '-');
  if (parts.size() != 3 || parts[0].size() != 4 || parts[1].size() != 2 || parts[2].size() != 2)
    return std::nullopt;
  const auto y = parse_int(parts[0]);
  const auto m = parse_int(parts[1]);
  const auto d = parse_int(parts[2]);
  if (!y || !m || !d) return std::nullopt;
  return Date{static_cast<int>(*y), static_cast<int>(*m), static_cast<int>(*d)};
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::optional<std::vector<int>> parse_zone_set(const std::string& text) {
  std::vector<int> zones;
  if (text.empty()) return zones;
  for (const auto& part : split(text, ';')) {
    const auto z = parse_int(part);
    if (!z) return std::nullopt;
    zones.push_back(static_cast<int>(*z));
  }
  std::sort(zones.begin(), zones.end());
  zones.erase(std::unique(zones.begin(), zones.end()), zones.end());
  return zones;
}

std::string format_zone_set(const std::vector<int>& zones) {
  std::vector<std::string> parts;
  parts.reserve(zones.size());
  for (int z : zones) parts.push_back(std::to_string(z));
  return join(parts, ";");
}

std::vector<std::string> split_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : content) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) {
    if (current.back() == '\r') current.pop_back();
    lines.push_back(current);
  }
  return lines;
}

void validate_into(const CrashRecord& record, const FieldCatalog& catalog, int line,
                   ParseResult& result) {
  const ValidationResult vr = validate(record, catalog);
  if (vr.ok()) {
    result.records.push_back(record);
    return;
  }
  for (const auto& v : vr.violations)
    result.diagnostics.push_back({line, record.record_id, v.field + ": " + v.message});
}

ParseResult parse_delimited(const std::string& content, const FieldCatalog& catalog) {
  const auto lines = split_lines(content);
  if (lines.empty()) throw Error("malformed header: file is empty");

  const auto header = split(lines[0], ',');
  const auto& wanted = canonical_columns();
  std::set<std::string> seen;
  for (const auto& name : header) {
    if (std::find(wanted.begin(), wanted.end(), name) == wanted.end())
      throw Error("malformed header: unknown column '" + name + "'");
    if (!seen.insert(name).second)
      throw Error("malformed header: duplicate column '" + name + "'");
  }
  for (const auto& name : wanted)
    if (seen.count(name) == 0) throw Error("malformed header: missing column '" + name + "'");

  ParseResult result;
  std::set<std::string> ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const int line_no = static_cast<int>(i) + 1;
    const auto cells = split(lines[i], ',');
    if (cells.size() != header.size()) {
      result.diagnostics.push_back(
          {line_no, "", "row has " + std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size())});
      continue;
    }

    CrashRecord record;
    bool row_ok = true;
    auto fail = [&](const std::string& field, const std::string& cause) {
      result.diagnostics.push_back({line_no, record.record_id, field + ": " + cause});
      row_ok = false;
    };

    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& name = header[c];
      const std::string& cell = cells[c];
      if (name == "record_id") {
        record.record_id = cell;
        if (cell.empty()) fail(name, "missing value");
      } else if (name == "report_date") {
        const auto date = parse_date(cell);
        if (!date)
          fail(name, "not a date (YYYY-MM-DD)");
        else
          record.report_date = *date;
      } else if (name == "damage_locations") {
        const auto zones = parse_zone_set(cell);
        if (!zones)
          fail(name, "not a zone list");
        else
          record.damage_locations = *zones;
      } else {
        const ColumnSpec* spec = column_spec(name);
        if (cell.empty()) {
          if (!spec->optional) fail(name, "missing value");
          continue;
        }
        const auto value = parse_int(cell);
        if (!value) {
          fail(name, "not a code");
          continue;
        }
        spec->set(record, static_cast<int>(*value));
      }
    }

    if (row_ok && !record.record_id.empty() && !ids.insert(record.record_id).second) {
      result.diagnostics.push_back(
          {line_no, record.record_id, "record_id: duplicate '" + record.record_id + "'"});
      row_ok = false;
    }
    if (row_ok) validate_into(record, catalog, line_no, result);
  }
  return result;
}

ParseResult parse_structured(const std::string& content, const FieldCatalog& catalog) {
  ParseResult result;
  const auto lines = split_lines(content);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const int line_no = static_cast<int>(i) + 1;

    json obj = json::parse(lines[i], nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      result.diagnostics.push_back({line_no, "", "not a JSON object"});
      continue;
    }

    CrashRecord record;
    bool row_ok = true;
    auto fail = [&](const std::string& field, const std::string& cause) {
      result.diagnostics.push_back({line_no, record.record_id, field + ": " + cause});
      row_ok = false;
    };

    if (obj.contains("record_id") && obj["record_id"].is_string())
      record.record_id = obj["record_id"].get<std::string>();
    else
      fail("record_id", "missing value");

    if (obj.contains("report_date") && obj["report_date"].is_string()) {
      const auto date = parse_date(obj["report_date"].get<std::string>());
      if (!date)
        fail("report_date", "not a date (YYYY-MM-DD)");
      else
        record.report_date = *date;
    } else {
      fail("report_date", "missing value");
    }

    if (obj.contains("damage_locations")) {
      const auto& arr = obj["damage_locations"];
      if (!arr.is_array() || !std::all_of(arr.begin(), arr.end(),
                                          [](const json& v) { return v.is_number_integer(); })) {
        fail("damage_locations", "not a zone list");
      } else {
        std::vector<int> zones = arr.get<std::vector<int>>();
        std::sort(zones.begin(), zones.end());
        zones.erase(std::unique(zones.begin(), zones.end()), zones.end());
        record.damage_locations = std::move(zones);
      }
    }

    for (const auto& spec : column_specs()) {
      if (!obj.contains(spec.name) || obj[spec.name].is_null()) {
        if (!spec.optional) fail(spec.name, "missing value");
        continue;
      }
      if (!obj[spec.name].is_number_integer()) {
        fail(spec.name, "not a code");
        continue;
      }
      spec.set(record, obj[spec.name].get<int>());
    }

    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const std::string& key = it.key();
      if (key == "record_id" || key == "report_date" || key == "damage_locations") continue;
      if (column_spec(key) == nullptr) fail(key, "unknown field");
    }

    if (row_ok && !ids.insert(record.record_id).second) {
      result.diagnostics.push_back(
          {line_no, record.record_id, "record_id: duplicate '" + record.record_id + "'"});
      row_ok = false;
    }
    if (row_ok) validate_into(record, catalog, line_no, result);
  }
  return result;
}

std::string csv_cell(const CrashRecord& r, const std::string& name) {
  if (name == "record_id") return r.record_id;
  if (name == "report_date") return format_date(r.report_date);
  if (name == "damage_locations") return format_zone_set(r.damage_locations);
  const ColumnSpec* spec = column_spec(name);
  (void)spec;
  const FieldSpec* field = FieldCatalog::standard().find(name);
  const auto value = field->get(r);
  return value ? std::to_string(*value) : std::string();
}

}  // namespace

RecordFile record_file_for(const std::string& path) {
  auto ends_with = [&path](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".jsonl") || ends_with(".ndjson"))
    return {path, RecordFileFormat::RecordPerLineStructured};
  return {path, RecordFileFormat::DelimitedTable};
}

const std::vector<std::string>& canonical_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> out = {"record_id", "report_date"};
    for (const auto& c : column_specs()) out.push_back(c.name);
    out.push_back("damage_locations");
    return out;
  }();
  return cols;
}

ParseResult parse_records(const RecordFile& file, const FieldCatalog& catalog) {
  return parse_records_text(read_file(file.path), file.format, catalog);
}

ParseResult parse_records_text(const std::string& content, RecordFileFormat format,
                               const FieldCatalog& catalog) {
  return format == RecordFileFormat::DelimitedTable ? parse_delimited(content, catalog)
                                                    : parse_structured(content, catalog);
}

std::string to_delimited(const std::vector<CrashRecord>& records) {
  std::string out = join(canonical_columns(), ",") + "\n";
  for (const auto& r : records) {
    std::vector<std::string> cells;
    cells.reserve(canonical_columns().size());
    for (const auto& name : canonical_columns()) cells.push_back(csv_cell(r, name));
    out += join(cells, ",") + "\n";
  }
  return out;
}

std::string to_jsonl(const std::vector<CrashRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json obj = json::object();
    obj["record_id"] = r.record_id;
    obj["report_date"] = format_date(r.report_date);
    for (const auto& spec : column_specs()) {
      const FieldSpec* field = FieldCatalog::standard().find(spec.name);
      const auto value = field->get(r);
      if (value) obj[spec.name] = *value;
    }
    if (!r.damage_locations.empty()) obj["damage_locations"] = r.damage_locations;
    out += obj.dump() + "\n";
  }
  return out;
}

FilterResult filter_for_analysis(const std::vector<CrashRecord>& records) {
  FilterResult result;
  result.report.input = static_cast<int>(records.size());
  for (const auto& r : records) {
    const bool mode_ok = r.v1_mode == codes::kModeAutonomousEngaged;
    const bool count_ok = r.involved_vehicles == 2;
    if (mode_ok && count_ok) {
      result.retained.push_back(r);
    } else {
      if (!mode_ok) ++result.report.removed_mode;
      if (!count_ok) ++result.report.removed_vehicle_count;
    }
  }
  result.report.retained = static_cast<int>(result.retained.size());
  return result;
}

std::map<int, std::map<std::string, int>> annual_party_distribution(
    const std::vector<CrashRecord>& records) {
  const FieldSpec* field = FieldCatalog::standard().find("type_of_object_collided");
  std::map<int, std::map<std::string, int>> out;
  for (const auto& r : records) {
    const CodeInfo* info = field->code_info(r.type_of_object_collided);
    const std::string party = info ? info->display : "Unknown";
    ++out[r.report_date.year][party];
  }
  return out;
}

}  // namespace avscen
