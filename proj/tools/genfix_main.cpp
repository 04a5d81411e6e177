// Regenerates the bundled synthetic fixtures under data/. The corpora are
// deterministic constructions: every record is built from a per-scenario
// template so that the reference rule file assigns exactly the intended
// scenario, and the marginal counts of the bundled tables hold by design.
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "avscen/io.hpp"
#include "avscen/model.hpp"
#include "avscen/util.hpp"

namespace {

using avscen::CrashRecord;
using avscen::Date;

struct Labeled {
  CrashRecord record;
  int scenario = 0;
};

// Valid two-party record that matches no mapping rule (scenario 36 shape).
CrashRecord base_record() {
  CrashRecord r;
  r.report_date = {2021, 1, 1};
  r.location_type = 5;
  r.weather = 1;
  r.crash_type = 8;
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

void set_intersection(CrashRecord& r, int location, int control, int intersection_type) {
  r.location_type = location;
  r.traffic_control_type = control;
  r.type_of_intersection = intersection_type;
}

void vary_benign(CrashRecord& r, int idx) {
  static const int weathers[] = {1, 1, 1, 2, 1, 3, 1, 2, 1, 1};
  static const int peaks[] = {1, 2, 1, 1, 3, 1, 1, 2, 1, 3};
  static const int surfaces[] = {1, 1, 1, 1, 2, 1, 1, 1, 1, 1};
  r.weather = weathers[idx % 10];
  r.if_peak_time = peaks[idx % 10];
  r.roadway_surface = surfaces[idx % 10];
  r.number_of_lanes_one_direction = 1 + idx % 3;
}

void assign_date(CrashRecord& r, int idx, bool vru_or_object) {
  if (vru_or_object) {
    r.report_date = {2023, 1 + idx % 12, 1 + idx % 28};
    return;
  }
  static const int years[] = {2018, 2019, 2020, 2021, 2022, 2023, 2024};
  r.report_date = {years[idx % 7], 1 + idx % 12, 1 + idx % 28};
}

class CorpusBuilder {
 public:
  // Emits `count` copies of `shape` labeled with `scenario`; benign fields
  // and dates vary deterministically with the global index.
  void emit(int count, int scenario, const CrashRecord& shape) {
    for (int i = 0; i < count; ++i) {
      CrashRecord r = shape;
      vary_benign(r, index_);
      const bool vru = r.type_of_object_collided != 2 && r.type_of_object_collided != 6;
      assign_date(r, index_, vru);
      // Rear-end crashes with the AV in front dent the rear of the body; vary
      // the secondary zone so the heatmap has texture beyond the rear bumper.
      if (r.crash_type == 3 && r.front_vehicle == 1) {
        switch (index_ % 5) {
          case 0: r.damage_locations = {2}; break;
          case 1: r.damage_locations = {2, 5}; break;
          case 2: r.damage_locations = {2, 6}; break;
          case 3: r.damage_locations = {2, 10}; break;
          default: r.damage_locations = {2}; break;
        }
      }
      rows_.push_back({r, scenario});
      ++index_;
    }
  }

  std::vector<Labeled> take() { return std::move(rows_); }

 private:
  std::vector<Labeled> rows_;
  int index_ = 0;
};

// The 322-record analysis corpus: per-scenario counts follow the reference
// frequency table; location shares put the intersection impact area above
// 50% and the roadway segment near 30%.
std::vector<Labeled> build_corpus() {
  CorpusBuilder b;
  const CrashRecord base = base_record();

  // Rear-end / lead vehicle stopped (105).
  CrashRecord lvs = base;
  lvs.crash_type = 3;
  lvs.front_vehicle = 1;
  lvs.direction_v1 = 0;
  lvs.direction_v2 = 1;
  lvs.v1_state = 2;
  lvs.movement_preceding_v1 = 1;
  {
    CrashRecord r = lvs;
    set_intersection(r, 1, 3, 1);
    r.v1_intention = 1;
    b.emit(50, 24, r);
    r.v1_intention = 4;
    r.v1_yield_for = 1;
    b.emit(10, 24, r);
  }
  {
    CrashRecord r = lvs;
    set_intersection(r, 1, 4, 1);
    r.v1_intention = 6;
    b.emit(15, 24, r);
  }
  {
    CrashRecord r = lvs;
    set_intersection(r, 2, 3, 1);
    r.v1_intention = 1;
    b.emit(12, 24, r);
  }
  {
    CrashRecord r = lvs;
    r.location_type = 4;
    r.v1_intention = 7;
    r.v1_yield_for = 1;
    b.emit(12, 24, r);
  }
  {
    CrashRecord r = lvs;
    r.v1_intention = 5;
    b.emit(6, 24, r);
  }

  // Rear-end / following vehicle maneuvering (38).
  CrashRecord fvm = base;
  fvm.crash_type = 3;
  fvm.front_vehicle = 1;
  fvm.movement_other_v2 = 3;
  fvm.movement_preceding_v2 = 10;
  {
    CrashRecord r = fvm;
    r.roadside_parking = true;
    r.lighting = 3;
    r.number_of_lanes_one_direction = 3;
    b.emit(22, 20, r);
    set_intersection(r, 1, 3, 1);
    r.lighting = 1;
    r.v1_intention = 5;
    b.emit(16, 20, r);
  }

  // Rear-end / lead vehicle decelerating (35).
  CrashRecord lvd = base;
  lvd.crash_type = 3;
  lvd.front_vehicle = 1;
  lvd.speed_change_v1 = 2;
  lvd.movement_preceding_v1 = 8;
  lvd.v1_intention = 2;
  {
    CrashRecord r = lvd;
    r.lighting = 3;
    r.roadside_parking = true;
    b.emit(12, 23, r);
  }
  {
    CrashRecord r = lvd;
    set_intersection(r, 1, 3, 2);
    r.cycle_lane = 2;
    r.road_types = 1;
    b.emit(12, 23, r);
  }
  {
    CrashRecord r = lvd;
    set_intersection(r, 2, 3, 1);
    b.emit(11, 23, r);
  }

  // Backing into vehicle (19).
  {
    CrashRecord r = base;
    r.location_type = 3;
    r.direction_v1 = 2;
    r.movement_preceding_v1 = 7;
    r.damage_locations = {2};
    b.emit(13, 13, r);
  }
  {
    CrashRecord r = base;
    r.direction_v2 = 2;
    r.movement_preceding_v2 = 7;
    r.damage_locations = {9};
    b.emit(6, 13, r);
  }

  // Pedalcyclist / no maneuver (17).
  CrashRecord pcn = base;
  pcn.type_of_object_collided = 3;
  pcn.crash_type = 7;
  pcn.movement_other_v2 = 13;
  pcn.damage_locations = {1};
  {
    CrashRecord r = pcn;
    set_intersection(r, 1, 4, 1);
    b.emit(9, 12, r);
    r = pcn;
    b.emit(8, 12, r);
  }

  // Drifting / same direction (13).
  {
    CrashRecord r = base;
    r.crash_type = 2;
    r.relative_position = 3;
    r.damage_locations = {8};
    b.emit(7, 17, r);
    r.relative_position = 4;
    r.damage_locations = {7};
    b.emit(6, 17, r);
  }

  // Opposite direction / no maneuver (13).
  CrashRecord opp = base;
  opp.relative_position = 2;
  opp.damage_locations = {3};
  {
    CrashRecord r = opp;
    set_intersection(r, 1, 2, 1);
    r.crash_type = 2;
    b.emit(8, 19, r);
    r.crash_type = 1;
    r.damage_locations = {1, 9};
    b.emit(5, 19, r);
  }

  // Parking / same direction (11).
  {
    CrashRecord r = base;
    r.crash_type = 2;
    r.movement_other_v1 = 8;
    r.movement_preceding_v1 = 11;
    r.roadside_parking = true;
    r.damage_locations = {8};
    b.emit(7, 15, r);
  }
  {
    CrashRecord r = base;
    r.location_type = 3;
    r.crash_type = 2;
    r.movement_other_v2 = 8;
    r.damage_locations = {7};
    b.emit(4, 15, r);
  }

  // Rear-end / lead vehicle moving at lower constant speed (7).
  {
    CrashRecord r = base;
    r.crash_type = 3;
    r.front_vehicle = 1;
    set_intersection(r, 1, 3, 1);
    r.v1_intention = 5;
    b.emit(7, 22, r);
  }

  // Left turn across path, lateral direction (7).
  CrashRecord ltap_ld = base;
  ltap_ld.crash_type = 4;
  ltap_ld.damage_locations = {7};
  {
    CrashRecord r = ltap_ld;
    set_intersection(r, 1, 3, 1);
    r.movement_turn_v1 = 2;
    r.movement_other_v1 = 13;
    r.movement_preceding_v1 = 5;
    r.relative_position = 3;
    r.v1_intention = 4;
    r.v1_yield_for = 2;
    b.emit(4, 28, r);
  }
  {
    CrashRecord r = ltap_ld;
    set_intersection(r, 2, 3, 1);
    r.movement_turn_v2 = 2;
    r.movement_other_v2 = 13;
    r.movement_preceding_v2 = 5;
    r.relative_position = 4;
    b.emit(3, 28, r);
  }

  // Object / no maneuver (7).
  {
    CrashRecord r = base;
    r.type_of_object_collided = 5;
    r.crash_type = 5;
    r.damage_locations = {1};
    b.emit(7, 35, r);
  }

  // Other (7): matches no rule, lands on the default.
  {
    CrashRecord r = base;
    set_intersection(r, 2, 3, 1);
    b.emit(7, 36, r);
  }

  // Straight crossing paths (7).
  CrashRecord scp = base;
  scp.crash_type = 4;
  scp.relative_position = 3;
  scp.damage_locations = {8};
  {
    CrashRecord r = scp;
    set_intersection(r, 1, 3, 1);
    b.emit(3, 27, r);
    set_intersection(r, 2, 3, 1);
    b.emit(4, 27, r);
  }

  // Changing lanes / same direction (7).
  CrashRecord lane_change = base;
  lane_change.crash_type = 2;
  lane_change.damage_locations = {8};
  {
    CrashRecord r = lane_change;
    set_intersection(r, 1, 4, 1);
    r.movement_other_v1 = 3;
    r.movement_preceding_v1 = 10;
    r.relative_position = 3;
    b.emit(4, 16, r);
    r.movement_other_v1 = 1;
    r.movement_preceding_v1 = 2;
    r.movement_other_v2 = 3;
    r.movement_preceding_v2 = 10;
    r.relative_position = 4;
    r.damage_locations = {7};
    b.emit(3, 16, r);
  }

  // Turning / same direction (7).
  CrashRecord turning = base;
  turning.crash_type = 2;
  turning.relative_position = 3;
  turning.damage_locations = {4};
  {
    CrashRecord r = turning;
    set_intersection(r, 1, 4, 1);
    r.movement_turn_v1 = 1;
    r.movement_other_v1 = 13;
    r.movement_preceding_v1 = 4;
    b.emit(4, 14, r);
    r = turning;
    set_intersection(r, 1, 4, 1);
    r.movement_turn_v2 = 1;
    r.movement_other_v2 = 13;
    r.movement_preceding_v2 = 4;
    b.emit(3, 14, r);
  }

  // Rear-end / lead vehicle accelerating (6).
  {
    CrashRecord r = base;
    r.crash_type = 3;
    r.front_vehicle = 1;
    r.speed_change_v1 = 1;
    set_intersection(r, 1, 3, 1);
    b.emit(6, 21, r);
  }

  // Object / maneuver (5).
  {
    CrashRecord r = base;
    r.type_of_object_collided = 5;
    r.crash_type = 5;
    r.movement_other_v1 = 3;
    r.movement_preceding_v1 = 10;
    r.damage_locations = {4};
    b.emit(5, 34, r);
  }

  // Pedalcyclist / maneuver (3).
  {
    CrashRecord r = base;
    r.type_of_object_collided = 3;
    r.crash_type = 2;
    r.movement_other_v1 = 3;
    r.movement_preceding_v1 = 10;
    r.damage_locations = {4};
    b.emit(3, 11, r);
  }

  // Left turn across path / opposite direction (2).
  {
    CrashRecord r = base;
    set_intersection(r, 1, 3, 1);
    r.crash_type = 4;
    r.relative_position = 2;
    r.movement_turn_v1 = 2;
    r.movement_other_v1 = 13;
    r.movement_preceding_v1 = 5;
    r.v1_intention = 4;
    r.v1_yield_for = 1;
    r.damage_locations = {3, 9};
    b.emit(2, 30, r);
  }

  // Vehicle failure (2).
  {
    CrashRecord r = base;
    r.if_vehicle_failure = true;
    r.damage_locations = {12};
    b.emit(2, 1, r);
  }

  // Animal / no maneuver (1).
  {
    CrashRecord r = base;
    r.type_of_object_collided = 1;
    r.damage_locations = {1};
    b.emit(1, 8, r);
  }

  // Left turn into path (1).
  {
    CrashRecord r = base;
    set_intersection(r, 1, 3, 1);
    r.crash_type = 2;
    r.movement_turn_v1 = 2;
    r.movement_other_v1 = 13;
    r.movement_preceding_v1 = 5;
    r.relative_position = 3;
    r.damage_locations = {3};
    b.emit(1, 29, r);
  }

  // Non-collision / no impact (1), intersection-located.
  {
    CrashRecord r = base;
    set_intersection(r, 2, 3, 1);
    r.type_of_object_collided = 6;
    r.damage_severity = 1;
    r.damage_locations = {};
    b.emit(1, 33, r);
  }

  // Pedestrian / no maneuver (1).
  {
    CrashRecord r = base;
    set_intersection(r, 1, 3, 1);
    r.type_of_object_collided = 4;
    r.crash_type = 7;
    r.movement_other_v2 = 13;
    r.damage_locations = {1};
    b.emit(1, 10, r);
  }

  std::vector<Labeled> rows = b.take();

  // Severity texture: intersection crossing-path scenarios skew severe, the
  // rest stay mostly slight with a sprinkle of moderate.
  int crossing_seen = 0;
  int slight_seen = 0;
  for (auto& labeled : rows) {
    const int s = labeled.scenario;
    if (s == 27 || s == 28 || s == 29 || s == 30) {
      static const int severities[] = {4, 3, 2, 3, 2, 4, 2, 3, 2, 2, 4, 3, 2, 2, 2, 2, 2};
      labeled.record.damage_severity = severities[crossing_seen % 17];
      ++crossing_seen;
    } else if (s != 33) {
      ++slight_seen;
      if (slight_seen % 17 == 0) labeled.record.damage_severity = 3;
      if (slight_seen % 41 == 0) labeled.record.damage_severity = 1;
    }
  }
  return rows;
}

// Records the screening drops: wrong driving mode or wrong vehicle count.
std::vector<CrashRecord> build_removed() {
  std::vector<CrashRecord> out;
  const CrashRecord base = base_record();
  auto emit = [&out](int count, const CrashRecord& shape) {
    for (int i = 0; i < count; ++i) {
      CrashRecord r = shape;
      vary_benign(r, static_cast<int>(out.size()) + 7);
      assign_date(r, static_cast<int>(out.size()) + 3, false);
      out.push_back(r);
    }
  };

  CrashRecord disengaged = base;
  disengaged.v1_mode = 2;
  emit(150, disengaged);

  CrashRecord conventional = base;
  conventional.v1_mode = 3;
  emit(80, conventional);

  CrashRecord single_vehicle = base;
  single_vehicle.involved_vehicles = 1;
  single_vehicle.type_of_object_collided = 5;
  single_vehicle.crash_type = 5;
  emit(40, single_vehicle);

  CrashRecord three_vehicle = base;
  three_vehicle.involved_vehicles = 3;
  three_vehicle.crash_type = 3;
  emit(23, three_vehicle);

  return out;
}

// Rear-end mining universe built so the leading association rule carries the
// published support/confidence/lift triple: 191 records, 107 of them LVS,
// the antecedent {impact area + signal + signal stopped} held by 33 records
// of which 32 are LVS (32/191 = 0.168, 32/33 = 0.970, lift 1.731).
std::vector<Labeled> build_lvs_mining_fixture() {
  CorpusBuilder b;
  CrashRecord base = base_record();
  base.crash_type = 3;
  base.front_vehicle = 1;
  base.damage_locations = {2};

  auto lvs = [&base]() {
    CrashRecord r = base;
    r.direction_v1 = 0;
    r.v1_state = 2;
    r.movement_preceding_v1 = 1;
    return r;
  };
  auto fvm = [&base]() {
    CrashRecord r = base;
    r.movement_other_v2 = 3;
    r.movement_preceding_v2 = 10;
    return r;
  };
  auto lvd = [&base]() {
    CrashRecord r = base;
    r.speed_change_v1 = 2;
    r.movement_preceding_v1 = 8;
    return r;
  };
  auto lvm = [&base]() { return base; };  // lead forward at constant speed
  auto lva = [&base]() {
    CrashRecord r = base;
    r.speed_change_v1 = 1;
    return r;
  };

  // Antecedent block: 32 LVS + 1 FVM share impact-area/signal/signal-stopped.
  {
    CrashRecord r = lvs();
    set_intersection(r, 1, 3, 1);
    r.v1_intention = 1;
    b.emit(32, 24, r);
  }
  {
    CrashRecord r = fvm();
    set_intersection(r, 1, 3, 1);
    r.v1_intention = 1;
    b.emit(1, 20, r);
  }
  // Partial-overlap blocks keep every proper sub-antecedent strictly less
  // confident than the full rule.
  {
    CrashRecord r = fvm();
    set_intersection(r, 1, 3, 1);
    r.v1_intention = 8;
    b.emit(4, 20, r);
  }
  {
    CrashRecord r = fvm();
    set_intersection(r, 1, 4, 1);
    r.v1_intention = 1;
    b.emit(2, 20, r);
  }
  {
    CrashRecord r = lvd();
    set_intersection(r, 2, 3, 1);
    r.v1_intention = 1;
    b.emit(2, 23, r);
  }
  // Filler blocks: each location/intention combo splits evenly between LVS
  // and a sibling scenario, so none of them yields a confident rule.
  {
    CrashRecord r = lvs();
    r.v1_intention = 5;
    b.emit(20, 24, r);
    r = fvm();
    r.v1_intention = 5;
    b.emit(20, 20, r);
  }
  {
    CrashRecord r = lvs();
    r.location_type = 4;
    r.v1_intention = 7;
    b.emit(20, 24, r);
    r = lvd();
    r.location_type = 4;
    r.v1_intention = 7;
    b.emit(20, 23, r);
  }
  {
    CrashRecord r = lvs();
    r.location_type = 3;
    r.v1_intention = 8;
    b.emit(20, 24, r);
    r = lvm();
    r.location_type = 3;
    r.v1_intention = 8;
    b.emit(20, 22, r);
  }
  {
    CrashRecord r = lvs();
    r.v1_intention = 8;
    b.emit(15, 24, r);
    r = lva();
    r.v1_intention = 8;
    b.emit(15, 21, r);
  }

  std::vector<Labeled> rows = b.take();
  // The mining fields must stay constant across the fixture apart from the
  // three antecedent fields, so undo the benign variation.
  for (auto& labeled : rows) {
    labeled.record.weather = 1;
    labeled.record.if_peak_time = 1;
    labeled.record.roadway_surface = 1;
    labeled.record.number_of_lanes_one_direction = 2;
    labeled.record.report_date = {2022, 6, 1};
  }
  return rows;
}

std::vector<CrashRecord> build_severity_fixture() {
  std::vector<CrashRecord> out;
  const CrashRecord base = base_record();
  auto emit = [&out, &base](int count, int severity) {
    for (int i = 0; i < count; ++i) {
      CrashRecord r = base;
      r.damage_severity = severity;
      r.record_id = "S" + std::string(4 - std::to_string(out.size() + 1).size(), '0') +
                    std::to_string(out.size() + 1);
      assign_date(r, static_cast<int>(out.size()), false);
      out.push_back(r);
    }
  };
  emit(755, 2);  // slight  75.5%
  emit(140, 3);  // moderate 14.0%
  emit(28, 4);   // severe   2.8%
  emit(77, 1);   // none     7.7%
  return out;
}

std::vector<CrashRecord> build_control_type_fixture() {
  std::vector<CrashRecord> out;
  const CrashRecord base = base_record();
  auto emit = [&out, &base](int count, int control) {
    for (int i = 0; i < count; ++i) {
      CrashRecord r = base;
      if (control > 0) set_intersection(r, 1, control, 1);
      r.record_id = "C" + std::string(4 - std::to_string(out.size() + 1).size(), '0') +
                    std::to_string(out.size() + 1);
      assign_date(r, static_cast<int>(out.size()), false);
      out.push_back(r);
    }
  };
  emit(104, 3);  // signal    67.97%
  emit(38, 4);   // stop sign 24.84%
  emit(6, 2);    // no control
  emit(3, 5);    // yield sign
  emit(2, 1);    // metering light
  emit(12, 0);   // roadway segment, outside the intersection restriction
  return out;
}

// Causal-chain fixture shaped after the intersection-scenario analysis. The
// published shares (night 10/15, habitual violations 9/15, temporary
// obstruction 50%) cannot all be integral over 15 crashes, so each chain
// pattern is carried by two crashes: night 20/30, habitual 18/30 (10 stop
// sign + 8 red light), temporary obstruction 15/30. The per-crash branch
// assignments beyond those marginals are invented to complete the graph.
std::string build_fig16_chains() {
  std::string out =
      "# Intersection-scenario causal chains; 30 crashes, two per pattern.\n"
      "# Shares: night 20/30, habitually-stretching-rules 18/30,\n"
      "# temporary-obstruction-of-view 15/30.\n";

  const std::string habitual_chain =
      "[\"habitually-stretching-rules\",\"misjudgement-of-situation\"],"
      "[\"misjudgement-of-situation\",\"timing/no-action\"]";
  const std::string obstruction_chain =
      "[\"temporary-obstruction-of-view\",\"late-observation\"],"
      "[\"late-observation\",\"misjudgement-of-time-gaps\"],"
      "[\"misjudgement-of-time-gaps\",\"timing/no-action\"]";
  const std::string expectancy_chain =
      "[\"expectancy-of-certain-behaviours\",\"misjudgement-of-situation\"],"
      "[\"misjudgement-of-situation\",\"timing/too-early-action\"]";

  auto crash = [](int n, const std::string& lighting, const std::string& violation,
                  const std::string& links) {
    char id[8];
    std::snprintf(id, sizeof(id), "c%02d", n);
    std::string meta = "{\"lighting\":\"" + lighting + "\",\"violation\":\"" + violation + "\"}";
    return std::string("{\"crash_id\":\"") + id + "\",\"metadata\":" + meta +
           ",\"links\":[" + links + "]}\n";
  };

  int n = 1;
  // c01-c10: habitual stop-sign runners; the first six also sighted late
  // behind roadside parking; c01-c07 at night.
  for (int i = 0; i < 10; ++i, ++n) {
    std::string links = habitual_chain;
    if (i < 6) links += "," + obstruction_chain;
    out += crash(n, i < 7 ? "night" : "day", "stop-sign", links);
  }
  // c11-c18: habitual red-light runners; c11-c16 at night.
  for (int i = 0; i < 8; ++i, ++n)
    out += crash(n, i < 6 ? "night" : "day", "red-light", habitual_chain);
  // c19-c25: night crashes with obstructed view and an expectancy branch.
  for (int i = 0; i < 7; ++i, ++n)
    out += crash(n, "night", "none", obstruction_chain + "," + expectancy_chain);
  // c26-c27: daytime obstruction-only chains.
  out += crash(n++, "day", "none",
               "[\"temporary-obstruction-of-view\",\"late-observation\"],"
               "[\"late-observation\",\"misjudgement-of-time-gaps\"],"
               "[\"misjudgement-of-time-gaps\",\"speed\"]");
  out += crash(n++, "day", "none", obstruction_chain);
  // c28: permanent obstruction (median vegetation).
  out += crash(n++, "day", "none",
               "[\"permanent-obstruction-of-view\",\"missed-observation\"],"
               "[\"missed-observation\",\"misjudgement-of-situation\"],"
               "[\"misjudgement-of-situation\",\"timing/no-action\"]");
  // c29: insufficient guidance on a wide unmarked road.
  out += crash(n++, "day", "none",
               "[\"insufficient-guidance\",\"misjudgement-of-situation\"],"
               "[\"misjudgement-of-situation\",\"timing/too-early-action\"]");
  // c30: inadequate geometry plus a skills gap, distance misjudged.
  out += crash(n++, "day", "none",
               "[\"inadequate-road-geometry\",\"missed-observation\"],"
               "[\"insufficient-skills-knowledge\",\"missed-observation\"],"
               "[\"missed-observation\",\"misjudgement-of-time-gaps\"],"
               "[\"misjudgement-of-time-gaps\",\"distance\"]");
  return out;
}

std::string record_id(const char* prefix, int n, int width) {
  std::string digits = std::to_string(n);
  return prefix + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);

  // Interleave retained and removed records, then assign file-order ids.
  std::vector<Labeled> corpus = build_corpus();
  std::vector<CrashRecord> removed = build_removed();
  std::vector<CrashRecord> all;
  std::vector<Labeled> retained;
  std::size_t ci = 0, ri = 0;
  while (ci < corpus.size()) {
    all.push_back(corpus[ci].record);
    ++ci;
    if (ci % 11 == 0 && ri < removed.size()) {
      all.push_back(removed[ri]);
      ++ri;
    }
  }
  while (ri < removed.size()) all.push_back(removed[ri++]);

  std::size_t label_cursor = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i].record_id = record_id("R", static_cast<int>(i) + 1, 4);
    if (all[i].v1_mode == 1 && all[i].involved_vehicles == 2) {
      corpus[label_cursor].record = all[i];
      ++label_cursor;
    }
  }

  std::string csv615 = avscen::to_delimited(all);
  // Three raw rows carry lighting code 5, the duplicate-label alias of 3.
  {
    std::vector<std::string> lines = avscen::split(csv615, '\n');
    const auto& cols = avscen::canonical_columns();
    const std::size_t lighting_col =
        std::find(cols.begin(), cols.end(), "lighting") - cols.begin();
    int patched = 0;
    for (std::size_t i = 1; i < lines.size() && patched < 3; ++i) {
      auto cells = avscen::split(lines[i], ',');
      if (cells.size() == cols.size() && cells[lighting_col] == "3") {
        cells[lighting_col] = "5";
        lines[i] = avscen::join(cells, ",");
        ++patched;
      }
    }
    csv615 = avscen::join(lines, "\n");
  }
  avscen::write_file(dir + "/corpus_615.csv", csv615);

  std::vector<CrashRecord> records322;
  std::string labels = "record_id,scenario\n";
  for (const auto& labeled : corpus) {
    records322.push_back(labeled.record);
    labels += labeled.record.record_id + "," + std::to_string(labeled.scenario) + "\n";
  }
  avscen::write_file(dir + "/corpus_322.csv", avscen::to_delimited(records322));
  avscen::write_file(dir + "/labels_322.csv", labels);

  std::vector<Labeled> mining = build_lvs_mining_fixture();
  std::vector<CrashRecord> mining_records;
  for (std::size_t i = 0; i < mining.size(); ++i) {
    mining[i].record.record_id = record_id("M", static_cast<int>(i) + 1, 4);
    mining_records.push_back(mining[i].record);
  }
  avscen::write_file(dir + "/fixture_lvs_mining.csv", avscen::to_delimited(mining_records));

  avscen::write_file(dir + "/fixture_severity.csv",
                     avscen::to_delimited(build_severity_fixture()));
  avscen::write_file(dir + "/fixture_control_type.csv",
                     avscen::to_delimited(build_control_type_fixture()));
  avscen::write_file(dir + "/fixture_fig16.chains", build_fig16_chains());

  std::cout << "fixtures written to " << dir << "/ (" << all.size() << " raw records, "
            << records322.size() << " retained, " << mining_records.size()
            << " mining records)\n";
  return 0;
}
