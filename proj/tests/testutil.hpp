#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "avscen/model.hpp"

namespace avscen::test {

inline std::string data_path(const std::string& name) {
  return std::string(AVSCEN_DATA_DIR) + "/" + name;
}

inline std::filesystem::path fresh_temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("avscen_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// A record that satisfies every invariant (roadway segment, so the
/// intersection-only fields stay absent).
inline CrashRecord valid_record(const std::string& id = "T0001") {
  CrashRecord r;
  r.record_id = id;
  r.report_date = {2022, 5, 17};
  r.location_type = 5;
  r.weather = 1;
  r.crash_type = 3;
  r.roadway_surface = 1;
  r.roadway_conditions = 8;
  r.lighting = 1;
  r.if_peak_time = 1;
  r.movement_preceding_v1 = 2;
  r.movement_preceding_v2 = 2;
  r.v1_intention = 8;
  r.cycle_lane = 1;
  r.lane_markings = 2;
  r.road_types = 4;
  r.roadside_parking = false;
  r.number_of_lanes_one_direction = 2;
  r.v1_mode = 1;
  r.v1_state = 1;
  r.involved_vehicles = 2;
  r.type_of_object_collided = 2;
  r.direction_v1 = 1;
  r.direction_v2 = 1;
  r.speed_change_v1 = 0;
  r.speed_change_v2 = 0;
  r.if_vehicle_failure = false;
  r.movement_turn_v1 = 0;
  r.movement_turn_v2 = 0;
  r.movement_other_v1 = 1;
  r.movement_other_v2 = 1;
  r.relative_position = 1;
  r.front_vehicle = 1;
  r.damage_severity = 2;
  r.damage_locations = {2};
  return r;
}

/// Uniformly random record over the documented code sets, intersection
/// fields kept consistent. Useful for round-trip and purity properties.
inline CrashRecord random_valid_record(std::mt19937& rng, const std::string& id) {
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  CrashRecord r = valid_record(id);
  r.report_date = {2018 + pick(0, 6), pick(1, 12), pick(1, 28)};
  r.location_type = pick(1, 5);
  if (is_intersection_located(r)) {
    r.traffic_control_type = pick(1, 5);
    r.type_of_intersection = pick(1, 6);
  }
  r.weather = pick(1, 7);
  r.crash_type = pick(1, 8);
  r.roadway_surface = pick(1, 4);
  r.roadway_conditions = pick(1, 8);
  r.lighting = pick(1, 4);
  r.if_peak_time = pick(1, 3);
  r.movement_preceding_v1 = pick(1, 18);
  r.movement_preceding_v2 = pick(1, 18);
  r.v1_intention = pick(1, 8);
  if (FieldCatalog::standard().intention_is_yielding(r.v1_intention) && pick(0, 1) == 1)
    r.v1_yield_for = pick(1, 3);
  r.cycle_lane = pick(1, 5);
  r.lane_markings = pick(1, 2);
  r.road_types = pick(1, 4);
  r.roadside_parking = pick(0, 1) == 1;
  r.number_of_lanes_one_direction = pick(1, 4);
  r.v1_state = pick(1, 2);
  r.type_of_object_collided = pick(1, 6);
  r.direction_v1 = pick(0, 2);
  r.direction_v2 = pick(0, 2);
  r.speed_change_v1 = pick(0, 2);
  r.speed_change_v2 = pick(0, 2);
  r.if_vehicle_failure = pick(0, 19) == 0;
  r.movement_turn_v1 = pick(0, 2);
  r.movement_turn_v2 = pick(0, 2);
  r.movement_other_v1 = pick(1, 13);
  r.movement_other_v2 = pick(1, 13);
  r.relative_position = pick(1, 4);
  r.front_vehicle = pick(1, 2);
  r.damage_severity = pick(1, 4);
  r.damage_locations.clear();
  for (int zone = 1; zone <= 12; ++zone)
    if (pick(0, 5) == 0) r.damage_locations.push_back(zone);
  return r;
}

}  // namespace avscen::test
