#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avscen {

/// Calendar date, parsed from ISO "YYYY-MM-DD".
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;
};

/// One coded two-party AV crash record. All enum fields hold integer codes;
/// optional fields are absent where the coding scheme permits "NA".
/// Immutable by convention once built by the parser.
struct CrashRecord {
  std::string record_id;
  Date report_date;

  int location_type = 0;  // 1 intersection impact area .. 5 roadway segment
  int weather = 0;
  int crash_type = 0;
  int roadway_surface = 0;
  int roadway_conditions = 0;
  std::optional<int> traffic_control_type;  // present iff intersection-located
  int lighting = 0;                         // code 5 is an alias of 3, normalized on parse
  std::optional<int> type_of_intersection;  // present iff intersection-located
  int if_peak_time = 0;
  int movement_preceding_v1 = 0;
  int movement_preceding_v2 = 0;
  int v1_intention = 0;
  std::optional<int> v1_yield_for;  // present implies a yielding intention
  int cycle_lane = 0;
  int lane_markings = 0;
  int road_types = 0;
  bool roadside_parking = false;
  int number_of_lanes_one_direction = 0;
  int v1_mode = 0;
  int v1_state = 0;
  int involved_vehicles = 0;
  int type_of_object_collided = 0;
  int direction_v1 = 0;
  int direction_v2 = 0;
  int speed_change_v1 = 0;
  int speed_change_v2 = 0;
  bool if_vehicle_failure = false;
  int movement_turn_v1 = 0;
  int movement_turn_v2 = 0;
  int movement_other_v1 = 0;
  int movement_other_v2 = 0;
  int relative_position = 0;
  int front_vehicle = 0;
  int damage_severity = 0;               // 1 none, 2 slight, 3 moderate, 4 severe
  std::vector<int> damage_locations;     // sorted unique zone codes, see kDamageZones

  bool operator==(const CrashRecord&) const = default;
};

enum class FieldKind {
  RequiredCode,  // closed code set, always present
  OptionalCode,  // closed code set, may be absent ("NA")
  Count,         // open positive integer
  Flag,          // boolean, coded 0/1
};

struct CodeInfo {
  int code;
  std::string display;  // label as printed in the coding scheme
  std::string mining;   // label spelling used in mined-rule tokens
};

/// Per-field metadata: canonical name (also the file header name), the
/// token spelling used by the miner, the value domain, and an accessor.
struct FieldSpec {
  std::string name;
  std::string mining_name;
  FieldKind kind;
  std::vector<CodeInfo> codes;  // empty for Count fields
  std::optional<int> (*get)(const CrashRecord&) = nullptr;

  const CodeInfo* code_info(int code) const;
  bool code_valid(int code) const;
};

/// The coded-field catalog. The standard catalog carries the bundled code
/// sets; additional intention / yield-for codes can be registered, which
/// yields a new catalog value.
class FieldCatalog {
 public:
  static const FieldCatalog& standard();

  const std::vector<FieldSpec>& fields() const { return fields_; }
  const FieldSpec* find(std::string_view name) const;

  /// Registers extra codes for an open-ended field (v1_intention or
  /// v1_yield_for). `yielding` marks intention codes that permit v1_yield_for.
  FieldCatalog with_extra_codes(std::string_view field, std::vector<CodeInfo> extra,
                                bool yielding = false) const;

  bool intention_is_yielding(int code) const;

 private:
  std::vector<FieldSpec> fields_;
  std::vector<int> yielding_intentions_;

  friend FieldCatalog make_standard_catalog();
};

struct DamageZone {
  int code;
  std::string label;
  int row;  // display grid position, front of vehicle = row 0
  int col;
};

/// Fixed 12-zone vehicle-body damage grid.
const std::vector<DamageZone>& damage_zones();
const DamageZone* damage_zone(int code);

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every field against its code set plus the cross-field rules
/// (intersection-only fields, yield implication). Total: never throws on a
/// structurally well-formed record; violations are data, not failures.
ValidationResult validate(const CrashRecord& record,
                          const FieldCatalog& catalog = FieldCatalog::standard());

// Code constants used throughout; values follow the coding scheme.
namespace codes {
inline constexpr int kLocIntersectionImpactArea = 1;
inline constexpr int kLocIntersectionCenter = 2;
inline constexpr int kLocParkingLot = 3;
inline constexpr int kLocRamp = 4;
inline constexpr int kLocRoadwaySegment = 5;

inline constexpr int kCrashRearEnd = 3;

inline constexpr int kModeAutonomousEngaged = 1;

inline constexpr int kCollidedAnimal = 1;
inline constexpr int kCollidedVehicle = 2;
inline constexpr int kCollidedNonMotorized = 3;
inline constexpr int kCollidedPedestrian = 4;
inline constexpr int kCollidedObject = 5;
inline constexpr int kCollidedNone = 6;

inline constexpr int kSeverityNone = 1;
inline constexpr int kSeveritySlight = 2;
inline constexpr int kSeverityModerate = 3;
inline constexpr int kSeveritySevere = 4;

inline constexpr int kLightingDaylight = 1;
inline constexpr int kLightingDarkStreetLights = 3;
inline constexpr int kLightingDarkStreetLightsAlias = 5;  // duplicate label in the scheme
}  // namespace codes

inline bool is_intersection_located(const CrashRecord& r) {
  return r.location_type == codes::kLocIntersectionImpactArea ||
         r.location_type == codes::kLocIntersectionCenter;
}

/// The coding scheme prints "Dark-Street Lights" for both codes 3 and 5;
/// code 5 is accepted on input and folded into 3.
inline int normalize_lighting(int code) {
  return code == codes::kLightingDarkStreetLightsAlias ? codes::kLightingDarkStreetLights : code;
}

}  // namespace avscen
