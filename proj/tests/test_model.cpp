#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <random>

#include "avscen/model.hpp"
#include "avscen/scenario.hpp"
#include "testutil.hpp"

using namespace avscen;

TEST_CASE("valid record passes validation") {
  const ValidationResult result = validate(test::valid_record());
  CHECK(result.ok());
}

TEST_CASE("intersection fields present and consistent validate ok") {
  CrashRecord r = test::valid_record();
  r.location_type = 1;
  r.traffic_control_type = 3;
  r.type_of_intersection = 1;
  CHECK(validate(r).ok());
}

TEST_CASE("control type outside an intersection is a violation") {
  CrashRecord r = test::valid_record();
  r.location_type = 3;  // parking lot
  r.traffic_control_type = 3;
  const ValidationResult result = validate(r);
  REQUIRE_FALSE(result.ok());
  bool found = false;
  for (const auto& v : result.violations)
    if (v.field == "traffic_control_type" &&
        v.message.find("outside intersection") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("weather code out of range is a violation naming the range") {
  CrashRecord r = test::valid_record();
  r.weather = 9;
  const ValidationResult result = validate(r);
  REQUIRE_FALSE(result.ok());
  REQUIRE(result.violations.size() == 1);
  CHECK(result.violations[0].field == "weather");
  CHECK(result.violations[0].message.find("1-7") != std::string::npos);
}

TEST_CASE("missing intersection fields at an intersection are violations") {
  CrashRecord r = test::valid_record();
  r.location_type = 2;
  const ValidationResult result = validate(r);
  CHECK(result.violations.size() == 2);
}

TEST_CASE("yield_for without a yielding intention is a violation") {
  CrashRecord r = test::valid_record();
  r.v1_intention = 1;  // signal stopped
  r.v1_yield_for = 1;
  CHECK_FALSE(validate(r).ok());
  r.v1_intention = 4;  // left turn & yield
  CHECK(validate(r).ok());
}

TEST_CASE("validate is total over arbitrary field values") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> wild(-3, 40);
  for (int i = 0; i < 2000; ++i) {
    CrashRecord r = test::valid_record();
    r.location_type = wild(rng);
    r.weather = wild(rng);
    r.crash_type = wild(rng);
    r.lighting = wild(rng);
    r.v1_intention = wild(rng);
    r.movement_other_v1 = wild(rng);
    r.damage_severity = wild(rng);
    r.number_of_lanes_one_direction = wild(rng);
    r.involved_vehicles = wild(rng);
    if (i % 3 == 0) r.traffic_control_type = wild(rng);
    if (i % 5 == 0) r.v1_yield_for = wild(rng);
    r.damage_locations = {wild(rng), wild(rng)};
    std::sort(r.damage_locations.begin(), r.damage_locations.end());
    r.damage_locations.erase(
        std::unique(r.damage_locations.begin(), r.damage_locations.end()),
        r.damage_locations.end());
    CHECK_NOTHROW(validate(r));
  }
}

TEST_CASE("code to label and back is the identity on every code set") {
  for (const auto& field : FieldCatalog::standard().fields()) {
    for (const auto& info : field.codes) {
      // decode
      const CodeInfo* decoded = field.code_info(info.code);
      REQUIRE(decoded != nullptr);
      // encode: the display label identifies the code uniquely
      int matches = 0;
      int encoded = -999;
      for (const auto& other : field.codes) {
        if (other.display == decoded->display) {
          ++matches;
          encoded = other.code;
        }
      }
      CHECK(matches == 1);
      CHECK(encoded == info.code);
    }
  }
}

TEST_CASE("lighting code 5 is the documented alias of 3") {
  CHECK(normalize_lighting(5) == 3);
  CHECK(normalize_lighting(3) == 3);
  CHECK(normalize_lighting(1) == 1);
  CrashRecord r = test::valid_record();
  r.lighting = 5;
  CHECK(validate(r).ok());  // accepted as alias
}

TEST_CASE("damage grid has exactly 12 zones with unique grid cells") {
  CHECK(damage_zones().size() == 12);
  std::set<std::pair<int, int>> cells;
  for (const auto& z : damage_zones()) {
    CHECK(damage_zone(z.code) == &z);
    cells.insert({z.row, z.col});
  }
  CHECK(cells.size() == 12);
  CHECK(damage_zone(13) == nullptr);
}

TEST_CASE("intention registration extends the code set") {
  const FieldCatalog extended = FieldCatalog::standard().with_extra_codes(
      "v1_intention", {{9, "U-turn & yield", "U-turn&yield"}}, true);
  CHECK(FieldCatalog::standard().find("v1_intention")->code_valid(9) == false);
  CHECK(extended.find("v1_intention")->code_valid(9));
  CHECK(extended.intention_is_yielding(9));

  CrashRecord r = test::valid_record();
  r.v1_intention = 9;
  r.v1_yield_for = 1;
  CHECK_FALSE(validate(r).ok());
  CHECK(validate(r, extended).ok());
}

TEST_CASE("scenario names cover the reference table") {
  CHECK(scenario_name(24) == "Rear-end/Lead Vehicle Stopped (LVS)");
  CHECK(scenario_name(36) == "Other");
  CHECK(scenario_name(11) == "Pedalcyclist/Maneuver");
  CHECK(scenario_name(12) == "Pedalcyclist/No Maneuver");
  CHECK(scenario_name(7) == "Scenario 7");  // unnamed ids fall back
  int named = 0;
  for (int id = kScenarioIdMin; id <= kScenarioIdMax; ++id)
    if (scenario_named(id)) ++named;
  CHECK(named == 24);
  CHECK(scenario_low_confidence(10));
  CHECK_FALSE(scenario_low_confidence(24));
}
