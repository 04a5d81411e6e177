#pragma once

#include <string>
#include <vector>

namespace avscen {

inline constexpr int kScenarioIdMin = 1;
inline constexpr int kScenarioIdMax = 36;

/// Default assignment when no mapping rule matches.
inline constexpr int kScenarioOther = 36;

bool scenario_id_valid(int id);

/// Human label for a scenario id. The 24 ids observed in the reference
/// frequency table carry their typology names; the rest fall back to
/// "Scenario <id>".
std::string scenario_name(int id);

/// Returns true for ids that carry a bundled typology name.
bool scenario_named(int id);

/// VRU-related scenarios whose rule matches are flagged low-confidence
/// (pedestrian, pedalcyclist, animal): field coding says little about the
/// other party's motion, so these assignments warrant a manual check.
bool scenario_low_confidence(int id);

/// Rear-end scenario family (LVS, FVM, LVD, LVM, LVA).
const std::vector<int>& rear_end_scenarios();

/// Crossing-path intersection scenario family (SCP, LTAP/LD, LTIP, LTAP/OD).
const std::vector<int>& intersection_scenarios();

}  // namespace avscen
