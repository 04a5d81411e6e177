#include "avscen/reports.hpp"

#include <algorithm>

#include <json.hpp>

#include "avscen/util.hpp"

namespace avscen {

namespace {

DistributionTable table_from_counts(const std::string& dimension, const std::string& field_name,
                                    const std::map<int, int>& counts) {
  DistributionTable table;
  table.dimension = dimension;
  const FieldSpec* field = FieldCatalog::standard().find(field_name);
  for (const auto& [code, count] : counts) {
    table.total += count;
    const CodeInfo* info = field ? field->code_info(code) : nullptr;
    table.rows.push_back({code, info ? info->display : std::to_string(code), count, 0.0});
  }
  for (auto& row : table.rows)
    row.percentage = table.total > 0 ? row.count / static_cast<double>(table.total) * 100.0 : 0.0;
  return table;
}

}  // namespace

DistributionTable location_distribution(const std::vector<CrashRecord>& records) {
  std::map<int, int> counts;
  for (const auto& r : records) ++counts[r.location_type];
  return table_from_counts("location_type", "location_type", counts);
}

DistributionTable control_type_distribution(const std::vector<CrashRecord>& records) {
  std::map<int, int> counts;
  for (const auto& r : records) {
    if (!is_intersection_located(r) || !r.traffic_control_type.has_value()) continue;
    ++counts[*r.traffic_control_type];
  }
  return table_from_counts("traffic_control_type", "traffic_control_type", counts);
}

DistributionTable severity_distribution(const std::vector<CrashRecord>& records) {
  std::map<int, int> counts;
  for (const auto& r : records) ++counts[r.damage_severity];
  return table_from_counts("damage_severity", "damage_severity", counts);
}

HeatmapMatrix damage_heatmap(const std::vector<CrashRecord>& records) {
  HeatmapMatrix heatmap;
  heatmap.zone_counts.assign(damage_zones().size(), 0);
  for (const auto& r : records) {
    for (int zone : r.damage_locations) {
      if (zone < 1 || zone > static_cast<int>(heatmap.zone_counts.size())) continue;
      ++heatmap.zone_counts[zone - 1];
      ++heatmap.total;
    }
  }
  return heatmap;
}

const std::vector<ScenarioGroup>& default_scenario_groups() {
  static const std::vector<ScenarioGroup> groups = {
      {"rear-end", {20, 21, 22, 23, 24}, {}},
      {"intersection", {27, 28, 29, 30}, {33}},
  };
  return groups;
}

std::vector<GroupSeverity> severity_by_scenario(const std::map<std::string, int>& assignments,
                                                const std::vector<CrashRecord>& records,
                                                const std::vector<ScenarioGroup>& groups) {
  std::vector<GroupSeverity> out;
  for (const auto& group : groups) {
    std::map<int, int> counts;
    for (const auto& r : records) {
      const auto it = assignments.find(r.record_id);
      if (it == assignments.end())
        throw Error("record '" + r.record_id + "' has no scenario assignment");
      const int scenario = it->second;
      const bool direct =
          std::find(group.ids.begin(), group.ids.end(), scenario) != group.ids.end();
      const bool conditional =
          std::find(group.conditional_ids.begin(), group.conditional_ids.end(), scenario) !=
              group.conditional_ids.end() &&
          is_intersection_located(r);
      if (direct || conditional) ++counts[r.damage_severity];
    }
    out.push_back({group.name, table_from_counts("damage_severity", "damage_severity", counts)});
  }
  return out;
}

std::string distribution_to_csv(const DistributionTable& table) {
  std::string out = "code,label,count,percentage\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.code) + "," + row.label + "," + std::to_string(row.count) + "," +
           format_fixed(round_half_up(row.percentage, 2), 2) + "\n";
  }
  return out;
}

std::string distribution_to_jsonl(const DistributionTable& table) {
  std::string out;
  for (const auto& row : table.rows) {
    nlohmann::json obj = {{"dimension", table.dimension},
                          {"code", row.code},
                          {"label", row.label},
                          {"count", row.count},
                          {"percentage", round_half_up(row.percentage, 2)}};
    out += obj.dump() + "\n";
  }
  return out;
}

std::string heatmap_to_csv(const HeatmapMatrix& heatmap) {
  std::string out = "zone,label,row,col,count\n";
  for (const auto& zone : damage_zones()) {
    out += std::to_string(zone.code) + "," + zone.label + "," + std::to_string(zone.row) + "," +
           std::to_string(zone.col) + "," +
           std::to_string(heatmap.zone_counts[zone.code - 1]) + "\n";
  }
  return out;
}

}  // namespace avscen
