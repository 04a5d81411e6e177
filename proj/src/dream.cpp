#include "avscen/dream.hpp"

#include <algorithm>

#include <json.hpp>

#include "avscen/util.hpp"

namespace avscen {

namespace {

using nlohmann::json;

const char* category_name(GenotypeCategory c) {
  switch (c) {
    case GenotypeCategory::None: return "none";
    case GenotypeCategory::DriverObservation: return "driver-observation";
    case GenotypeCategory::DriverInterpretation: return "driver-interpretation";
    case GenotypeCategory::DriverPermanentPersonal: return "driver-permanent-personal";
    case GenotypeCategory::TrafficEnvironment: return "traffic-environment";
    case GenotypeCategory::Organization: return "organization";
    case GenotypeCategory::Vehicle: return "vehicle";
  }
  return "?";
}

/// True when every node with outgoing links can reach a phenotype and the
/// union of links is acyclic, over the given adjacency.
bool acyclic(const std::map<std::string, std::set<std::string>>& adjacency) {
  std::map<std::string, int> state;  // 0 new, 1 visiting, 2 done
  std::vector<std::pair<std::string, bool>> stack;
  for (const auto& [node, _] : adjacency) {
    if (state[node] != 0) continue;
    stack.push_back({node, false});
    while (!stack.empty()) {
      auto [current, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        state[current] = 2;
        continue;
      }
      if (state[current] == 1) continue;
      state[current] = 1;
      stack.push_back({current, true});
      const auto it = adjacency.find(current);
      if (it == adjacency.end()) continue;
      for (const auto& next : it->second) {
        if (state[next] == 1) return false;  // back edge
        if (state[next] == 0) stack.push_back({next, false});
      }
    }
  }
  return true;
}

}  // namespace

Taxonomy Taxonomy::bundled() {
  Taxonomy t;
  auto phenotype = [&t](const char* label) {
    t.entries_.insert({label, {label, NodeKind::Phenotype, GenotypeCategory::None}});
  };
  auto genotype = [&t](const char* label, GenotypeCategory category) {
    t.entries_.insert({label, {label, NodeKind::Genotype, category}});
  };

  phenotype("timing/too-early-action");
  phenotype("timing/no-action");
  phenotype("speed");
  phenotype("distance");
  phenotype("direction");

  genotype("misjudgement-of-time-gaps", GenotypeCategory::DriverInterpretation);
  genotype("misjudgement-of-situation", GenotypeCategory::DriverInterpretation);
  genotype("expectancy-of-certain-behaviours", GenotypeCategory::DriverPermanentPersonal);
  genotype("habitually-stretching-rules", GenotypeCategory::DriverPermanentPersonal);
  genotype("insufficient-skills-knowledge", GenotypeCategory::DriverPermanentPersonal);
  genotype("missed-observation", GenotypeCategory::DriverObservation);
  genotype("late-observation", GenotypeCategory::DriverObservation);
  genotype("permanent-obstruction-of-view", GenotypeCategory::TrafficEnvironment);
  genotype("temporary-obstruction-of-view", GenotypeCategory::TrafficEnvironment);
  genotype("insufficient-guidance", GenotypeCategory::Organization);
  genotype("inadequate-road-geometry", GenotypeCategory::Organization);
  // Vehicle-category terms exist in DREAM but none are bundled: the crash
  // reports carry too little about the other vehicle to code them.
  return t;
}

const TaxonomyEntry* Taxonomy::find(const std::string& label) const {
  const auto it = entries_.find(label);
  return it == entries_.end() ? nullptr : &it->second;
}

void Taxonomy::register_term(TaxonomyEntry entry) {
  entries_.insert({entry.label, std::move(entry)});
}

CausalChainGraph::CausalChainGraph(Taxonomy taxonomy) : taxonomy_(std::move(taxonomy)) {}

void CausalChainGraph::add_crash_chain(const CrashChain& chain) {
  if (chain.crash_id.empty()) throw Error("crash chain without crash_id");
  if (chain.links.empty()) throw Error("crash '" + chain.crash_id + "': empty chain");

  bool reaches_phenotype = false;
  for (const auto& [from, to] : chain.links) {
    const TaxonomyEntry* from_entry = taxonomy_.find(from);
    const TaxonomyEntry* to_entry = taxonomy_.find(to);
    if (from_entry == nullptr)
      throw Error("crash '" + chain.crash_id + "': unknown label '" + from + "'");
    if (to_entry == nullptr)
      throw Error("crash '" + chain.crash_id + "': unknown label '" + to + "'");
    if (from_entry->kind == NodeKind::Phenotype)
      throw Error("crash '" + chain.crash_id + "': phenotype '" + from +
                  "' cannot have outgoing links");
    if (to_entry->kind == NodeKind::Phenotype) reaches_phenotype = true;
  }
  if (!reaches_phenotype)
    throw Error("crash '" + chain.crash_id + "': no phenotype terminal");

  // Within the crash's own chain, every factor must lead to a phenotype.
  {
    std::map<std::string, std::set<std::string>> local;
    for (const auto& [from, to] : chain.links) local[from].insert(to);
    if (!acyclic(local)) throw Error("crash '" + chain.crash_id + "': chain contains a cycle");
    for (const auto& [from, outs] : local) {
      std::set<std::string> seen;
      std::vector<std::string> frontier{from};
      bool ok = false;
      while (!frontier.empty() && !ok) {
        const std::string node = frontier.back();
        frontier.pop_back();
        if (!seen.insert(node).second) continue;
        const TaxonomyEntry* entry = taxonomy_.find(node);
        if (entry->kind == NodeKind::Phenotype) {
          ok = true;
          break;
        }
        const auto it = local.find(node);
        if (it != local.end())
          frontier.insert(frontier.end(), it->second.begin(), it->second.end());
      }
      if (!ok)
        throw Error("crash '" + chain.crash_id + "': factor '" + from +
                    "' does not reach a phenotype");
    }
  }

  // Merged-graph acyclicity check before committing anything.
  std::map<std::string, std::set<std::string>> merged;
  for (const auto& link : links_) merged[link.from].insert(link.to);
  for (const auto& [from, to] : chain.links) merged[from].insert(to);
  if (!acyclic(merged))
    throw Error("crash '" + chain.crash_id + "': chain would introduce a cycle");

  for (const auto& [from, to] : chain.links) {
    const auto it = std::lower_bound(links_.begin(), links_.end(), std::make_pair(from, to),
                                     [](const CausalLink& l, const std::pair<std::string, std::string>& key) {
                                       return std::tie(l.from, l.to) < std::tie(key.first, key.second);
                                     });
    if (it != links_.end() && it->from == from && it->to == to)
      it->crash_ids.insert(chain.crash_id);
    else
      links_.insert(it, {from, to, {chain.crash_id}});
  }
  registry_[chain.crash_id] = chain.metadata;
}

std::optional<FactorShare> CausalChainGraph::factor_share(
    const std::string& label,
    const std::optional<std::pair<std::string, std::string>>& metadata_equals) const {
  if (taxonomy_.find(label) == nullptr) throw Error("unknown label '" + label + "'");
  if (registry_.empty()) return std::nullopt;

  std::set<std::string> crashes;
  for (const auto& link : links_) {
    if (link.from != label && link.to != label) continue;
    crashes.insert(link.crash_ids.begin(), link.crash_ids.end());
  }
  long long numerator = 0;
  for (const auto& id : crashes) {
    if (metadata_equals.has_value()) {
      const auto& meta = registry_.at(id);
      const auto it = meta.find(metadata_equals->first);
      if (it == meta.end() || it->second != metadata_equals->second) continue;
    }
    ++numerator;
  }
  const long long denominator = static_cast<long long>(registry_.size());
  return FactorShare{numerator, denominator,
                     static_cast<double>(numerator) / static_cast<double>(denominator)};
}

std::optional<FactorShare> CausalChainGraph::metadata_share(const std::string& key,
                                                            const std::string& value) const {
  if (registry_.empty()) return std::nullopt;
  long long numerator = 0;
  for (const auto& [id, meta] : registry_) {
    const auto it = meta.find(key);
    if (it != meta.end() && it->second == value) ++numerator;
  }
  const long long denominator = static_cast<long long>(registry_.size());
  return FactorShare{numerator, denominator,
                     static_cast<double>(numerator) / static_cast<double>(denominator)};
}

std::map<std::string, long long> CausalChainGraph::node_crash_counts() const {
  std::map<std::string, std::set<std::string>> per_node;
  for (const auto& link : links_) {
    per_node[link.from].insert(link.crash_ids.begin(), link.crash_ids.end());
    per_node[link.to].insert(link.crash_ids.begin(), link.crash_ids.end());
  }
  std::map<std::string, long long> out;
  for (const auto& [node, ids] : per_node) out[node] = static_cast<long long>(ids.size());
  return out;
}

std::map<std::pair<std::string, std::string>, long long> CausalChainGraph::link_crash_counts()
    const {
  std::map<std::pair<std::string, std::string>, long long> out;
  for (const auto& link : links_)
    out[{link.from, link.to}] = static_cast<long long>(link.crash_ids.size());
  return out;
}

std::string CausalChainGraph::to_dot() const {
  std::string out = "digraph dream {\n  rankdir=LR;\n";
  const auto counts = node_crash_counts();
  for (const auto& [node, count] : counts) {
    const TaxonomyEntry* entry = taxonomy_.find(node);
    out += "  \"" + node + "\" [label=\"" + node + " (" + std::to_string(count) + ")\", kind=" +
           (entry->kind == NodeKind::Phenotype ? "phenotype" : "genotype") +
           ", category=" + category_name(entry->category) + "];\n";
  }
  for (const auto& link : links_) {
    out += "  \"" + link.from + "\" -> \"" + link.to + "\" [label=\"" +
           std::to_string(link.crash_ids.size()) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::vector<CrashChain> load_chain_file(const std::string& path) {
  return load_chains_text(read_file(path));
}

std::vector<CrashChain> load_chains_text(const std::string& content) {
  std::vector<CrashChain> chains;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    const std::size_t end = content.find('\n', start);
    std::string line =
        content.substr(start, end == std::string::npos ? std::string::npos : end - start);
    start = end == std::string::npos ? content.size() + 1 : end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    auto fail = [line_no](const std::string& msg) {
      throw Error("chains line " + std::to_string(line_no) + ": " + msg);
    };

    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) fail("not a JSON object");

    CrashChain chain;
    if (!obj.contains("crash_id") || !obj["crash_id"].is_string()) fail("missing crash_id");
    chain.crash_id = obj["crash_id"].get<std::string>();

    if (obj.contains("metadata")) {
      if (!obj["metadata"].is_object()) fail("metadata must be an object");
      for (auto it = obj["metadata"].begin(); it != obj["metadata"].end(); ++it) {
        if (!it.value().is_string()) fail("metadata values must be strings");
        chain.metadata[it.key()] = it.value().get<std::string>();
      }
    }

    if (!obj.contains("links") || !obj["links"].is_array() || obj["links"].empty())
      fail("missing non-empty links array");
    for (const auto& pair : obj["links"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
        fail("links entries must be [from, to] label pairs");
      chain.links.push_back({pair[0].get<std::string>(), pair[1].get<std::string>()});
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

}  // namespace avscen
