#include "avscen/scenario.hpp"

#include <map>

namespace avscen {

namespace {

// Note on numbering: the reference table for this typology revision lists
// both pedalcyclist variants under number 12; here the maneuver variant keeps
// its own typology id 11 so the two stay distinct (see docs/FORMATS.md).
const std::map<int, std::string>& named_scenarios() {
  static const std::map<int, std::string> names = {
      {1, "Vehicle Failure"},
      {8, "Animal/No Maneuver"},
      {10, "Pedestrian/No Maneuver"},
      {11, "Pedalcyclist/Maneuver"},
      {12, "Pedalcyclist/No Maneuver"},
      {13, "Backing into Vehicle"},
      {14, "Turning/Same Direction"},
      {15, "Parking/Same Direction"},
      {16, "Changing Lanes/Same Direction"},
      {17, "Drifting/Same Direction"},
      {19, "Opposite Direction/No Maneuver"},
      {20, "Rear-end/Following Vehicle Making a Maneuver and Approaching Lead Vehicle (FVM)"},
      {21, "Rear-end/Lead Vehicle Accelerating (LVA)"},
      {22, "Rear-end/Lead Vehicle Moving at Lower Constant Speed (LVM)"},
      {23, "Rear-end/Lead Vehicle Decelerating (LVD)"},
      {24, "Rear-end/Lead Vehicle Stopped (LVS)"},
      {27, "Straight Crossing Paths (SCP)"},
      {28, "Left Turn Across Path, Lateral Direction (LTAP/LD)"},
      {29, "Left Turn Into Path (LTIP)"},
      {30, "Left Turn Across Path/Opposite Direction (LTAP/OD)"},
      {33, "Non-collision/No Impact"},
      {34, "Object/Maneuver"},
      {35, "Object/No Maneuver"},
      {36, "Other"},
  };
  return names;
}

}  // namespace

bool scenario_id_valid(int id) { return id >= kScenarioIdMin && id <= kScenarioIdMax; }

std::string scenario_name(int id) {
  const auto& names = named_scenarios();
  auto it = names.find(id);
  if (it != names.end()) return it->second;
  return "Scenario " + std::to_string(id);
}

bool scenario_named(int id) { return named_scenarios().count(id) != 0; }

bool scenario_low_confidence(int id) { return id == 8 || id == 10 || id == 11 || id == 12; }

const std::vector<int>& rear_end_scenarios() {
  static const std::vector<int> ids = {20, 21, 22, 23, 24};
  return ids;
}

const std::vector<int>& intersection_scenarios() {
  static const std::vector<int> ids = {27, 28, 29, 30};
  return ids;
}

}  // namespace avscen
