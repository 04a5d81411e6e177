#pragma once

#include <map>
#include <string>
#include <vector>

#include "avscen/model.hpp"

namespace avscen {

struct DistributionRow {
  int code = 0;
  std::string label;
  int count = 0;
  double percentage = 0.0;  // full precision; rounded half-up to 2 decimals on emission
};

struct DistributionTable {
  std::string dimension;
  std::vector<DistributionRow> rows;  // observed codes, ascending
  int total = 0;
};

/// Counts per location type over all records.
DistributionTable location_distribution(const std::vector<CrashRecord>& records);

/// Counts per traffic control type, restricted to intersection-located
/// records.
DistributionTable control_type_distribution(const std::vector<CrashRecord>& records);

/// Counts per damage severity.
DistributionTable severity_distribution(const std::vector<CrashRecord>& records);

struct HeatmapMatrix {
  std::vector<long long> zone_counts;  // indexed by zone code - 1, see damage_zones()
  long long total = 0;                 // sum of per-record zone incidences
};

HeatmapMatrix damage_heatmap(const std::vector<CrashRecord>& records);

/// A named scenario group for per-group severity shares. `conditional_ids`
/// are counted into the group only when the record is intersection-located.
struct ScenarioGroup {
  std::string name;
  std::vector<int> ids;
  std::vector<int> conditional_ids;
};

/// Default grouping: the rear-end family, and the crossing-path intersection
/// family with the non-collision scenario included when intersection-located.
const std::vector<ScenarioGroup>& default_scenario_groups();

struct GroupSeverity {
  std::string group;
  DistributionTable severity;
};

/// Severity shares within each scenario group. Records without an assignment
/// abort; empty groups yield empty tables.
std::vector<GroupSeverity> severity_by_scenario(const std::map<std::string, int>& assignments,
                                                const std::vector<CrashRecord>& records,
                                                const std::vector<ScenarioGroup>& groups =
                                                    default_scenario_groups());

/// Delimited renderings; percentages half-up at 2 decimals.
std::string distribution_to_csv(const DistributionTable& table);
std::string distribution_to_jsonl(const DistributionTable& table);
std::string heatmap_to_csv(const HeatmapMatrix& heatmap);

}  // namespace avscen
