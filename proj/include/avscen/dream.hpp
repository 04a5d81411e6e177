#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "avscen/model.hpp"

namespace avscen {

enum class NodeKind { Phenotype, Genotype };

enum class GenotypeCategory {
  None,  // phenotypes carry no category beyond their observable class
  DriverObservation,
  DriverInterpretation,
  DriverPermanentPersonal,
  TrafficEnvironment,
  Organization,
  Vehicle,
};

struct TaxonomyEntry {
  std::string label;
  NodeKind kind = NodeKind::Genotype;
  GenotypeCategory category = GenotypeCategory::None;
};

/// Closed causation-factor vocabulary. The bundled set is the DREAM 3.0
/// subset used by the causal-chain analysis; additional DREAM terms can be
/// registered, free-form labels are rejected.
class Taxonomy {
 public:
  static Taxonomy bundled();

  const TaxonomyEntry* find(const std::string& label) const;
  void register_term(TaxonomyEntry entry);  // no-op if the label exists
  const std::map<std::string, TaxonomyEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, TaxonomyEntry> entries_;
};

using LabelPair = std::pair<std::string, std::string>;  // from -> to

struct CrashChain {
  std::string crash_id;
  std::map<std::string, std::string> metadata;  // e.g. lighting=night
  std::vector<LabelPair> links;
};

struct CausalLink {
  std::string from;
  std::string to;
  std::set<std::string> crash_ids;
};

struct FactorShare {
  long long numerator = 0;
  long long denominator = 0;
  double fraction = 0.0;
};

/// Aggregated DREAM chain graph: genotype-to-{genotype,phenotype} links with
/// per-crash attribution, plus a crash registry with metadata. Mutation is
/// single-writer; queries are read-only.
class CausalChainGraph {
 public:
  explicit CausalChainGraph(Taxonomy taxonomy = Taxonomy::bundled());

  /// Merges one crash chain. Labels must exist in the taxonomy, link sources
  /// must be genotypes, the chain must terminate in at least one phenotype,
  /// and the merged graph must stay acyclic; otherwise an Error is thrown
  /// and the graph is unchanged. Re-adding an identical chain is a no-op.
  void add_crash_chain(const CrashChain& chain);

  /// Share of registered crashes whose chain includes `label`; with a
  /// metadata predicate (key=value) the numerator is restricted to crashes
  /// satisfying it. Empty registry yields nullopt (undefined, distinct from
  /// zero).
  std::optional<FactorShare> factor_share(
      const std::string& label,
      const std::optional<std::pair<std::string, std::string>>& metadata_equals =
          std::nullopt) const;

  /// Share of registered crashes whose metadata matches key=value.
  std::optional<FactorShare> metadata_share(const std::string& key,
                                            const std::string& value) const;

  /// Node counts (distinct crashes on any incident link) and link counts.
  std::map<std::string, long long> node_crash_counts() const;
  std::map<std::pair<std::string, std::string>, long long> link_crash_counts() const;

  /// Deterministic DOT rendering with per-node and per-link crash counts.
  std::string to_dot() const;

  const std::vector<CausalLink>& links() const { return links_; }
  const std::map<std::string, std::map<std::string, std::string>>& registry() const {
    return registry_;
  }
  const Taxonomy& taxonomy() const { return taxonomy_; }

 private:
  Taxonomy taxonomy_;
  std::vector<CausalLink> links_;  // ordered by (from, to)
  std::map<std::string, std::map<std::string, std::string>> registry_;
};

/// Parses a chain file: one crash per line as a JSON object with crash_id,
/// optional metadata object, and a links array of [from, to] pairs.
/// Defects abort with the offending line number.
std::vector<CrashChain> load_chain_file(const std::string& path);
std::vector<CrashChain> load_chains_text(const std::string& content);

}  // namespace avscen
