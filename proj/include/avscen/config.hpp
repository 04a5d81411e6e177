#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avscen/dream.hpp"
#include "avscen/model.hpp"

namespace avscen {

/// Toolkit configuration: a single JSON file; every CLI flag overrides its
/// key. AVSCEN_CONFIG selects the default file path.
struct Config {
  double min_support = 0.02;
  double min_confidence = 0.8;
  double min_lift = 1.0;
  int min_len = 3;
  int max_len = 6;
  int threads = 1;
  int target_scenario = 24;
  std::vector<int> universe = {20, 21, 22, 23, 24};
  std::vector<std::string> mining_fields;  // empty = default_mining_fields()

  std::string rules_path;
  std::string chains_path;
  std::string truth_path;

  struct ExtraCode {
    int code = 0;
    std::string label;
    std::string mining_label;  // defaults to label
    bool yielding = false;     // intentions only
  };
  std::vector<ExtraCode> extra_intentions;
  std::vector<ExtraCode> extra_yield_for;
  std::vector<TaxonomyEntry> extra_taxonomy;
};

const std::vector<std::string>& default_mining_fields();

Config load_config(const std::string& path);
Config load_config_text(const std::string& content);

/// Range checks; throws Error on a bad configuration.
void validate_config(const Config& config);

/// Standard catalog extended with the configured intention / yield-for codes.
FieldCatalog catalog_for(const Config& config);

/// Bundled taxonomy extended with the configured extra terms.
Taxonomy taxonomy_for(const Config& config);

}  // namespace avscen
