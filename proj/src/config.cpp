#include "avscen/config.hpp"

#include <json.hpp>

#include "avscen/scenario.hpp"
#include "avscen/util.hpp"

namespace avscen {

namespace {

using nlohmann::json;

std::vector<Config::ExtraCode> parse_extra_codes(const json& arr, const char* key) {
  std::vector<Config::ExtraCode> out;
  if (!arr.is_array()) throw Error(std::string("config: ") + key + " must be an array");
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("code") || !item["code"].is_number_integer() ||
        !item.contains("label") || !item["label"].is_string())
      throw Error(std::string("config: ") + key + " entries need integer code and string label");
    Config::ExtraCode extra;
    extra.code = item["code"].get<int>();
    extra.label = item["label"].get<std::string>();
    extra.mining_label =
        item.contains("mining_label") ? item["mining_label"].get<std::string>() : extra.label;
    extra.yielding = item.value("yielding", false);
    out.push_back(std::move(extra));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& default_mining_fields() {
  static const std::vector<std::string> fields = {
      "location_type",  "traffic_control_type", "v1_intention",
      "v1_yield_for",   "lane_markings",        "cycle_lane",
      "roadside_parking", "type_of_intersection", "if_peak_time",
      "number_of_lanes_one_direction", "road_types", "lighting",
  };
  return fields;
}

Config load_config(const std::string& path) { return load_config_text(read_file(path)); }

Config load_config_text(const std::string& content) {
  json obj = json::parse(content, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) throw Error("config: not a JSON object");

  Config config;
  auto number = [&obj](const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw Error(std::string("config: ") + key + " must be a number");
    return obj[key].get<double>();
  };
  auto integer = [&obj](const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer())
      throw Error(std::string("config: ") + key + " must be an integer");
    return obj[key].get<int>();
  };
  auto str = [&obj](const char* key) -> std::string {
    if (!obj.contains(key)) return {};
    if (!obj[key].is_string()) throw Error(std::string("config: ") + key + " must be a string");
    return obj[key].get<std::string>();
  };

  config.min_support = number("min_support", config.min_support);
  config.min_confidence = number("min_confidence", config.min_confidence);
  config.min_lift = number("min_lift", config.min_lift);
  config.min_len = integer("min_len", config.min_len);
  config.max_len = integer("max_len", config.max_len);
  config.threads = integer("threads", config.threads);
  config.target_scenario = integer("target_scenario", config.target_scenario);
  config.rules_path = str("rules_path");
  config.chains_path = str("chains_path");
  config.truth_path = str("truth_path");

  if (obj.contains("universe")) {
    if (!obj["universe"].is_array()) throw Error("config: universe must be an array of ids");
    config.universe.clear();
    for (const auto& v : obj["universe"]) {
      if (!v.is_number_integer()) throw Error("config: universe must be an array of ids");
      config.universe.push_back(v.get<int>());
    }
  }
  if (obj.contains("mining_fields")) {
    if (!obj["mining_fields"].is_array())
      throw Error("config: mining_fields must be an array of field names");
    for (const auto& v : obj["mining_fields"]) {
      if (!v.is_string()) throw Error("config: mining_fields must be an array of field names");
      config.mining_fields.push_back(v.get<std::string>());
    }
  }
  if (obj.contains("extra_intentions"))
    config.extra_intentions = parse_extra_codes(obj["extra_intentions"], "extra_intentions");
  if (obj.contains("extra_yield_for"))
    config.extra_yield_for = parse_extra_codes(obj["extra_yield_for"], "extra_yield_for");
  if (obj.contains("extra_taxonomy")) {
    if (!obj["extra_taxonomy"].is_array()) throw Error("config: extra_taxonomy must be an array");
    for (const auto& item : obj["extra_taxonomy"]) {
      if (!item.is_object() || !item.contains("label") || !item["label"].is_string() ||
          !item.contains("kind") || !item["kind"].is_string())
        throw Error("config: extra_taxonomy entries need label and kind");
      TaxonomyEntry entry;
      entry.label = item["label"].get<std::string>();
      const std::string kind = item["kind"].get<std::string>();
      if (kind == "phenotype")
        entry.kind = NodeKind::Phenotype;
      else if (kind == "genotype")
        entry.kind = NodeKind::Genotype;
      else
        throw Error("config: extra_taxonomy kind must be phenotype or genotype");
      const std::string category = item.value("category", "none");
      if (category == "driver-observation")
        entry.category = GenotypeCategory::DriverObservation;
      else if (category == "driver-interpretation")
        entry.category = GenotypeCategory::DriverInterpretation;
      else if (category == "driver-permanent-personal")
        entry.category = GenotypeCategory::DriverPermanentPersonal;
      else if (category == "traffic-environment")
        entry.category = GenotypeCategory::TrafficEnvironment;
      else if (category == "organization")
        entry.category = GenotypeCategory::Organization;
      else if (category == "vehicle")
        entry.category = GenotypeCategory::Vehicle;
      else if (category == "none")
        entry.category = GenotypeCategory::None;
      else
        throw Error("config: unknown taxonomy category '" + category + "'");
      config.extra_taxonomy.push_back(std::move(entry));
    }
  }

  validate_config(config);
  return config;
}

void validate_config(const Config& config) {
  if (!(config.min_support > 0.0) || config.min_support > 1.0)
    throw Error("config: min_support must lie in (0, 1]");
  if (config.min_confidence < 0.0 || config.min_confidence > 1.0)
    throw Error("config: min_confidence must lie in [0, 1]");
  if (config.min_lift < 0.0) throw Error("config: min_lift must be >= 0");
  if (config.min_len < 2) throw Error("config: min_len must be >= 2");
  if (config.min_len > config.max_len)
    throw Error("config: min_len " + std::to_string(config.min_len) + " exceeds max_len " +
                std::to_string(config.max_len));
  if (config.threads < 1) throw Error("config: threads must be >= 1");
  if (!scenario_id_valid(config.target_scenario))
    throw Error("config: target_scenario outside [1, 36]");
  for (int id : config.universe)
    if (!scenario_id_valid(id)) throw Error("config: universe id outside [1, 36]");
}

FieldCatalog catalog_for(const Config& config) {
  FieldCatalog catalog = FieldCatalog::standard();
  auto to_infos = [](const std::vector<Config::ExtraCode>& extras) {
    std::vector<CodeInfo> infos;
    for (const auto& e : extras) infos.push_back({e.code, e.label, e.mining_label});
    return infos;
  };
  if (!config.extra_intentions.empty()) {
    std::vector<Config::ExtraCode> yielding, plain;
    for (const auto& e : config.extra_intentions) (e.yielding ? yielding : plain).push_back(e);
    if (!plain.empty()) catalog = catalog.with_extra_codes("v1_intention", to_infos(plain), false);
    if (!yielding.empty())
      catalog = catalog.with_extra_codes("v1_intention", to_infos(yielding), true);
  }
  if (!config.extra_yield_for.empty())
    catalog = catalog.with_extra_codes("v1_yield_for", to_infos(config.extra_yield_for));
  return catalog;
}

Taxonomy taxonomy_for(const Config& config) {
  Taxonomy taxonomy = Taxonomy::bundled();
  for (const auto& entry : config.extra_taxonomy) taxonomy.register_term(entry);
  return taxonomy;
}

}  // namespace avscen
