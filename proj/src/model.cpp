#include "avscen/model.hpp"

#include <algorithm>

namespace avscen {

namespace {

std::vector<CodeInfo> plain(std::initializer_list<std::pair<int, const char*>> items) {
  std::vector<CodeInfo> out;
  for (const auto& [code, label] : items) out.push_back({code, label, label});
  return out;
}

}  // namespace

const CodeInfo* FieldSpec::code_info(int code) const {
  for (const auto& c : codes)
    if (c.code == code) return &c;
  return nullptr;
}

bool FieldSpec::code_valid(int code) const {
  if (kind == FieldKind::Count) return code >= 1;
  if (kind == FieldKind::Flag) return code == 0 || code == 1;
  return code_info(code) != nullptr;
}

FieldCatalog make_standard_catalog() {
  FieldCatalog cat;
  auto add = [&cat](std::string name, std::string mining_name, FieldKind kind,
                    std::vector<CodeInfo> codes,
                    std::optional<int> (*get)(const CrashRecord&)) {
    cat.fields_.push_back({std::move(name), std::move(mining_name), kind, std::move(codes), get});
  };

  add("location_type", "Location_Type", FieldKind::RequiredCode,
      {{1, "Intersection impact area", "Intersection impact area"},
       {2, "Intersection center", "Intersection center"},
       {3, "Parking lot", "Parking lot"},
       {4, "Ramp", "Ramp"},
       {5, "Roadway segment", "Roadway segment"}},
      +[](const CrashRecord& r) { return std::optional<int>(r.location_type); });

  add("weather", "Weather", FieldKind::RequiredCode,
      plain({{1, "Clear"},
             {2, "Cloudy"},
             {3, "Raining"},
             {4, "Snowing"},
             {5, "Fog/Visibility"},
             {6, "Wind"},
             {7, "Other"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.weather); });

  add("crash_type", "Type.of.crash", FieldKind::RequiredCode,
      plain({{1, "Head-on"},
             {2, "Side Swipe"},
             {3, "Rear End"},
             {4, "Broadside"},
             {5, "Hit Object"},
             {6, "Overturned"},
             {7, "Vehicle/Pedestrian"},
             {8, "Other"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.crash_type); });

  add("roadway_surface", "Roadway.surface", FieldKind::RequiredCode,
      plain({{1, "Dry"}, {2, "Wet"}, {3, "Snowy-Icy"}, {4, "Slippery"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.roadway_surface); });

  add("roadway_conditions", "Roadway.conditions", FieldKind::RequiredCode,
      plain({{1, "Holes"},
             {2, "Loose Material"},
             {3, "Obstruction"},
             {4, "Construction"},
             {5, "Reduced Width"},
             {6, "Flooded"},
             {7, "Other"},
             {8, "No Unusual Conditions"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.roadway_conditions); });

  add("traffic_control_type", "Traffic.Control.Type", FieldKind::OptionalCode,
      {{1, "Metering light", "metering light"},
       {2, "No control", "no control"},
       {3, "Signal", "signal"},
       {4, "Stop sign", "stop sign"},
       {5, "Yield sign", "yield sign"}},
      +[](const CrashRecord& r) { return r.traffic_control_type; });

  // Codes 3 and 5 print the same label in the coding scheme; 5 is accepted on
  // input and normalized to 3, so tokens never split one condition in two.
  add("lighting", "Lighting", FieldKind::RequiredCode,
      {{1, "Daylight", "daylight"},
       {2, "Dusk-Dawn", "dusk-dawn"},
       {3, "Dark-Street Lights", "dark-street lights"},
       {4, "Dark-No Street Lights", "dark-no street lights"}},
      +[](const CrashRecord& r) { return std::optional<int>(r.lighting); });

  add("type_of_intersection", "Type.of.intersection", FieldKind::OptionalCode,
      {{1, "Cross-shaped", "cross-shaped"},
       {2, "T-shaped", "T-shaped"},
       {3, "X-shaped", "X-shaped"},
       {4, "Y-shaped", "Y-shaped"},
       {5, "Multi-roads", "multi-roads"},
       {6, "Roundabout", "roundabout"}},
      +[](const CrashRecord& r) { return r.type_of_intersection; });

  add("if_peak_time", "If_peak_time", FieldKind::RequiredCode,
      {{1, "Non-peak time", "non-peak"},
       {2, "Morning peak", "morning peak"},
       {3, "Evening peak", "evening peak"}},
      +[](const CrashRecord& r) { return std::optional<int>(r.if_peak_time); });

  const std::vector<CodeInfo> movement_preceding = plain({{1, "Stopped"},
                                                          {2, "Proceeding Straight"},
                                                          {3, "Ran Off Road"},
                                                          {4, "Making Right Turn"},
                                                          {5, "Making Left Turn"},
                                                          {6, "Making U Turn"},
                                                          {7, "Backing"},
                                                          {8, "Slowing/Stopping"},
                                                          {9, "Passing Other Vehicle"},
                                                          {10, "Changing Lanes"},
                                                          {11, "Parking Maneuver"},
                                                          {12, "Entering Traffic"},
                                                          {13, "Other Unsafe Turning"},
                                                          {14, "Xing into Opposite Lane"},
                                                          {15, "Parked"},
                                                          {16, "Merging"},
                                                          {17, "Traveling Wrong Way"},
                                                          {18, "Other"}});
  add("movement_preceding_v1", "Movement.preceding.V1", FieldKind::RequiredCode, movement_preceding,
      +[](const CrashRecord& r) { return std::optional<int>(r.movement_preceding_v1); });
  add("movement_preceding_v2", "Movement.preceding.V2", FieldKind::RequiredCode, movement_preceding,
      +[](const CrashRecord& r) { return std::optional<int>(r.movement_preceding_v2); });

  // Bundled intention codes cover the intentions named in the reference
  // analyses; more can be registered through with_extra_codes.
  add("v1_intention", "V1.intention", FieldKind::RequiredCode,
      {{1, "Signal stopped", "signal stopped"},
       {2, "Proceed straight & yield", "proceed straight&yield"},
       {3, "Right turn & yield", "right turn&yield"},
       {4, "Left turn & yield", "left turn&yield"},
       {5, "Stopped in road traffic", "stopped in road traffic"},
       {6, "Stopped stop sign", "stopped stop sign"},
       {7, "Merging & yield", "merging&yield"},
       {8, "Proceed straight", "proceed straight"}},
      +[](const CrashRecord& r) { return std::optional<int>(r.v1_intention); });

  add("v1_yield_for", "V1.yield.for", FieldKind::OptionalCode,
      {{1, "Oncoming traffic", "oncoming traffic"},
       {2, "Cross traffic", "cross traffic"},
       {3, "Front vehicle", "front vehicle"}},
      +[](const CrashRecord& r) { return r.v1_yield_for; });

  add("cycle_lane", "Cycle.lane", FieldKind::RequiredCode,
      {{1, "No - no cycle lane", "no-no cycle lane"},
       {2, "Yes - no separation", "yes-no separation"},
       {3, "Yes - mark separation", "yes-mark separation"},
       {4, "Yes - mark separation&columns", "yes-mark separation&columns"},
       {5, "Yes - mark separation&barrier", "yes-mark separation&barrier"}},
      +[](const CrashRecord& r) { return std::optional<int>(r.cycle_lane); });

  add("lane_markings", "Lane.markings", FieldKind::RequiredCode,
      {{1, "No lane markings", "no lane markings"}, {2, "Lane markings", "lane markings"}},
      +[](const CrashRecord& r) { return std::optional<int>(r.lane_markings); });

  add("road_types", "Road.types", FieldKind::RequiredCode,
      {{1, "Two-way with marked median", "two-way with marked median"},
       {2, "Two-way with hard median", "two-way with hard median"},
       {3, "One way", "one-way"},
       {4, "Two-way without median", "two-way without median"}},
      +[](const CrashRecord& r) { return std::optional<int>(r.road_types); });

  add("roadside_parking", "Roadside.parking", FieldKind::Flag,
      {{0, "No", "no"}, {1, "Yes", "yes"}},
      +[](const CrashRecord& r) { return std::optional<int>(r.roadside_parking ? 1 : 0); });

  add("number_of_lanes_one_direction", "Number.of.lanes.one.direction", FieldKind::Count, {},
      +[](const CrashRecord& r) { return std::optional<int>(r.number_of_lanes_one_direction); });

  add("v1_mode", "V1.mode", FieldKind::RequiredCode,
      plain({{1, "Autonomous Engaged"}, {2, "Autonomous Disengaged"}, {3, "Conventional"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.v1_mode); });

  add("v1_state", "V1.state", FieldKind::RequiredCode,
      plain({{1, "Moving"}, {2, "Stopped in Traffic"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.v1_state); });

  add("involved_vehicles", "Involved.vehicles", FieldKind::Count, {},
      +[](const CrashRecord& r) { return std::optional<int>(r.involved_vehicles); });

  add("type_of_object_collided", "Type.of.object.collided", FieldKind::RequiredCode,
      plain({{1, "Animal"},
             {2, "Vehicle"},
             {3, "Non-motorized vehicle"},
             {4, "Pedestrian"},
             {5, "Object"},
             {6, "None"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.type_of_object_collided); });

  const std::vector<CodeInfo> direction =
      plain({{0, "Stopped"}, {1, "Forward"}, {2, "Backward"}});
  add("direction_v1", "Direction.V1", FieldKind::RequiredCode, direction,
      +[](const CrashRecord& r) { return std::optional<int>(r.direction_v1); });
  add("direction_v2", "Direction.V2", FieldKind::RequiredCode, direction,
      +[](const CrashRecord& r) { return std::optional<int>(r.direction_v2); });

  const std::vector<CodeInfo> speed_change =
      plain({{0, "Constant"}, {1, "Accelerating"}, {2, "Decelerating"}});
  add("speed_change_v1", "Speed.change.V1", FieldKind::RequiredCode, speed_change,
      +[](const CrashRecord& r) { return std::optional<int>(r.speed_change_v1); });
  add("speed_change_v2", "Speed.change.V2", FieldKind::RequiredCode, speed_change,
      +[](const CrashRecord& r) { return std::optional<int>(r.speed_change_v2); });

  add("if_vehicle_failure", "If.vehicle.failure", FieldKind::Flag,
      {{0, "No", "no"}, {1, "Yes", "yes"}},
      +[](const CrashRecord& r) { return std::optional<int>(r.if_vehicle_failure ? 1 : 0); });

  const std::vector<CodeInfo> turn = plain({{0, "None"}, {1, "Right turn"}, {2, "Left turn"}});
  add("movement_turn_v1", "Movement.turn.V1", FieldKind::RequiredCode, turn,
      +[](const CrashRecord& r) { return std::optional<int>(r.movement_turn_v1); });
  add("movement_turn_v2", "Movement.turn.V2", FieldKind::RequiredCode, turn,
      +[](const CrashRecord& r) { return std::optional<int>(r.movement_turn_v2); });

  const std::vector<CodeInfo> movement_other = plain({{1, "Proceeding straight"},
                                                      {2, "Passing other vehicle"},
                                                      {3, "Changing lanes"},
                                                      {4, "Making U turn"},
                                                      {5, "Entering traffic"},
                                                      {6, "Merging"},
                                                      {7, "Ran off road"},
                                                      {8, "Parking maneuver"},
                                                      {9, "Parked"},
                                                      {10, "Travelling wrong way"},
                                                      {11, "Lane splitting"},
                                                      {12, "Other"},
                                                      {13, "None"}});
  add("movement_other_v1", "Movement.other.V1", FieldKind::RequiredCode, movement_other,
      +[](const CrashRecord& r) { return std::optional<int>(r.movement_other_v1); });
  add("movement_other_v2", "Movement.other.V2", FieldKind::RequiredCode, movement_other,
      +[](const CrashRecord& r) { return std::optional<int>(r.movement_other_v2); });

  add("relative_position", "Relative.position", FieldKind::RequiredCode,
      plain({{1, "Same lane & direction"},
             {2, "Same lane reverse direction"},
             {3, "Lateral lane - right"},
             {4, "Lateral lane - left"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.relative_position); });

  add("front_vehicle", "Front.vehicle", FieldKind::RequiredCode,
      plain({{1, "Autonomous Vehicle"}, {2, "Other Vehicle"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.front_vehicle); });

  add("damage_severity", "Damage.severity", FieldKind::RequiredCode,
      plain({{1, "None"}, {2, "Slight"}, {3, "Moderate"}, {4, "Severe"}}),
      +[](const CrashRecord& r) { return std::optional<int>(r.damage_severity); });

  cat.yielding_intentions_ = {2, 3, 4, 7};
  return cat;
}

const FieldCatalog& FieldCatalog::standard() {
  static const FieldCatalog cat = make_standard_catalog();
  return cat;
}

const FieldSpec* FieldCatalog::find(std::string_view name) const {
  for (const auto& f : fields_)
    if (f.name == name) return &f;
  return nullptr;
}

FieldCatalog FieldCatalog::with_extra_codes(std::string_view field, std::vector<CodeInfo> extra,
                                            bool yielding) const {
  FieldCatalog out = *this;
  for (auto& f : out.fields_) {
    if (f.name != field) continue;
    for (auto& c : extra) {
      if (f.code_info(c.code) != nullptr) continue;  // already registered
      if (c.mining.empty()) c.mining = c.display;
      if (yielding && field == "v1_intention") out.yielding_intentions_.push_back(c.code);
      f.codes.push_back(std::move(c));
    }
    break;
  }
  return out;
}

bool FieldCatalog::intention_is_yielding(int code) const {
  return std::find(yielding_intentions_.begin(), yielding_intentions_.end(), code) !=
         yielding_intentions_.end();
}

const std::vector<DamageZone>& damage_zones() {
  static const std::vector<DamageZone> zones = {
      {1, "Front bumper", 0, 1},  {2, "Rear bumper", 3, 1},   {3, "Left front", 0, 0},
      {4, "Right front", 0, 2},   {5, "Left rear", 2, 0},     {6, "Right rear", 2, 2},
      {7, "Left side", 1, 0},     {8, "Right side", 1, 2},    {9, "Front center", 1, 1},
      {10, "Rear center", 2, 1},  {11, "Roof", 3, 2},         {12, "Undercarriage", 3, 0},
  };
  return zones;
}

const DamageZone* damage_zone(int code) {
  for (const auto& z : damage_zones())
    if (z.code == code) return &z;
  return nullptr;
}

ValidationResult validate(const CrashRecord& record, const FieldCatalog& catalog) {
  ValidationResult result;
  auto violation = [&result](const std::string& field, std::string message) {
    result.violations.push_back({field, std::move(message)});
  };

  for (const auto& f : catalog.fields()) {
    std::optional<int> value = f.get(record);
    if (!value.has_value()) continue;  // absence is checked by the presence rules below
    if (f.name == "lighting") value = normalize_lighting(*value);
    if (!f.code_valid(*value)) {
      std::string msg;
      switch (f.kind) {
        case FieldKind::Count:
          msg = "count must be >= 1, got " + std::to_string(*value);
          break;
        case FieldKind::Flag:
          msg = "flag must be 0 or 1, got " + std::to_string(*value);
          break;
        default: {
          int lo = f.codes.front().code, hi = f.codes.front().code;
          for (const auto& c : f.codes) {
            lo = std::min(lo, c.code);
            hi = std::max(hi, c.code);
          }
          msg = "code out of range " + std::to_string(lo) + "-" + std::to_string(hi) + ", got " +
                std::to_string(*value);
          break;
        }
      }
      violation(f.name, msg);
    }
  }

  const bool at_intersection = is_intersection_located(record);
  if (at_intersection) {
    if (!record.traffic_control_type.has_value())
      violation("traffic_control_type", "required for intersection-located records");
    if (!record.type_of_intersection.has_value())
      violation("type_of_intersection", "required for intersection-located records");
  } else {
    if (record.traffic_control_type.has_value())
      violation("traffic_control_type", "control type present outside intersection");
    if (record.type_of_intersection.has_value())
      violation("type_of_intersection", "intersection type present outside intersection");
  }

  if (record.v1_yield_for.has_value() && !catalog.intention_is_yielding(record.v1_intention))
    violation("v1_yield_for", "present but v1_intention is not a yielding intention");

  if (record.report_date.year < 1900 || record.report_date.year > 2200 ||
      record.report_date.month < 1 || record.report_date.month > 12 ||
      record.report_date.day < 1 || record.report_date.day > 31)
    violation("report_date", "not a calendar date");

  if (record.record_id.empty()) violation("record_id", "must not be empty");

  for (std::size_t i = 0; i < record.damage_locations.size(); ++i) {
    const int zone = record.damage_locations[i];
    if (damage_zone(zone) == nullptr)
      violation("damage_locations", "unknown zone code " + std::to_string(zone));
    else if (i > 0 && record.damage_locations[i - 1] >= zone)
      violation("damage_locations", "zone codes must be strictly increasing");
  }

  return result;
}

}  // namespace avscen
