#include "avscen/mining.hpp"

#include <algorithm>
#include <thread>

#include "avscen/scenario.hpp"
#include "avscen/util.hpp"

namespace avscen {

namespace {

using IdSet = std::vector<int>;  // token ids, sorted

struct TokenTable {
  std::vector<std::string> tokens;  // sorted; index = id

  explicit TokenTable(const std::vector<Transaction>& transactions) {
    for (const auto& t : transactions)
      tokens.insert(tokens.end(), t.items.begin(), t.items.end());
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  }

  int id(const std::string& token) const {
    const auto it = std::lower_bound(tokens.begin(), tokens.end(), token);
    if (it == tokens.end() || *it != token) return -1;
    return static_cast<int>(it - tokens.begin());
  }

  std::vector<std::string> render(const IdSet& ids) const {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back(tokens[id]);
    return out;
  }
};

std::vector<IdSet> encode_ids(const std::vector<Transaction>& transactions,
                              const TokenTable& table) {
  std::vector<IdSet> out;
  out.reserve(transactions.size());
  for (const auto& t : transactions) {
    IdSet ids;
    ids.reserve(t.items.size());
    for (const auto& item : t.items) ids.push_back(table.id(item));
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  return out;
}

bool meets_support(long long count, std::size_t n, double min_support) {
  return static_cast<double>(count) / static_cast<double>(n) >= min_support;
}

/// Counts candidate occurrences, optionally over several threads. Counts are
/// summed per candidate, so thread count and partitioning are unobservable.
std::vector<long long> count_candidates(const std::vector<IdSet>& transactions,
                                        const std::vector<IdSet>& candidates, int threads) {
  std::vector<long long> counts(candidates.size(), 0);
  if (candidates.empty() || transactions.empty()) return counts;

  const int workers =
      std::clamp(threads, 1, static_cast<int>(std::min<std::size_t>(transactions.size(), 64)));
  auto count_range = [&](std::size_t begin, std::size_t end, std::vector<long long>& into) {
    for (std::size_t t = begin; t < end; ++t) {
      const IdSet& row = transactions[t];
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (std::includes(row.begin(), row.end(), candidates[c].begin(), candidates[c].end()))
          ++into[c];
      }
    }
  };

  if (workers == 1) {
    count_range(0, transactions.size(), counts);
    return counts;
  }

  std::vector<std::vector<long long>> partials(workers,
                                               std::vector<long long>(candidates.size(), 0));
  std::vector<std::thread> pool;
  const std::size_t chunk = (transactions.size() + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(transactions.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(count_range, begin, end, std::ref(partials[w]));
  }
  for (auto& t : pool) t.join();
  for (const auto& partial : partials)
    for (std::size_t c = 0; c < counts.size(); ++c) counts[c] += partial[c];
  return counts;
}

/// Classic F(k-1) x F(k-1) join on a shared (k-2)-prefix, followed by the
/// anti-monotone prune: every (k-1)-subset of a candidate must be frequent.
std::vector<IdSet> next_candidates(const std::vector<IdSet>& frequent) {
  std::vector<IdSet> candidates;
  const std::size_t k1 = frequent.empty() ? 0 : frequent[0].size();
  for (std::size_t i = 0; i < frequent.size(); ++i) {
    for (std::size_t j = i + 1; j < frequent.size(); ++j) {
      if (k1 > 1 && !std::equal(frequent[i].begin(), frequent[i].end() - 1, frequent[j].begin(),
                                frequent[j].end() - 1))
        break;  // frequent is sorted, so the shared prefix run is contiguous
      IdSet candidate = frequent[i];
      candidate.push_back(frequent[j].back());
      if (candidate[candidate.size() - 2] > candidate.back())
        std::swap(candidate[candidate.size() - 2], candidate.back());

      bool all_subsets_frequent = true;
      IdSet subset(candidate.begin(), candidate.end() - 1);
      for (std::size_t drop = 0; drop + 1 < candidate.size() && all_subsets_frequent; ++drop) {
        subset = candidate;
        subset.erase(subset.begin() + static_cast<long>(drop));
        all_subsets_frequent = std::binary_search(frequent.begin(), frequent.end(), subset);
      }
      if (all_subsets_frequent) candidates.push_back(std::move(candidate));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  return candidates;
}

}  // namespace

std::string scenario_token(int scenario_id) {
  return scenario_token_prefix() + scenario_name(scenario_id);
}

std::vector<Transaction> encode_transactions(const std::vector<CrashRecord>& records,
                                             const std::vector<std::string>& field_selection,
                                             const std::map<std::string, int>& assignments,
                                             const std::vector<int>& universe_scenarios,
                                             const FieldCatalog& catalog) {
  if (field_selection.empty()) throw Error("mining field selection is empty");
  std::vector<const FieldSpec*> fields;
  fields.reserve(field_selection.size());
  for (const auto& name : field_selection) {
    const FieldSpec* spec = catalog.find(name);
    if (spec == nullptr) throw Error("unknown mining field '" + name + "'");
    fields.push_back(spec);
  }

  std::vector<Transaction> out;
  for (const auto& record : records) {
    const auto it = assignments.find(record.record_id);
    if (it == assignments.end())
      throw Error("record '" + record.record_id + "' has no scenario assignment");
    const int scenario = it->second;
    if (!universe_scenarios.empty() &&
        std::find(universe_scenarios.begin(), universe_scenarios.end(), scenario) ==
            universe_scenarios.end())
      continue;

    Transaction t;
    t.record_id = record.record_id;
    for (const FieldSpec* field : fields) {
      const std::optional<int> value = field->get(record);
      if (!value.has_value()) continue;
      if (field->kind == FieldKind::Count) {
        t.items.push_back(field->mining_name + "=" + std::to_string(*value));
        continue;
      }
      const CodeInfo* info = field->code_info(*value);
      if (info == nullptr) continue;  // out-of-set codes carry no token
      t.items.push_back(field->mining_name + "=" + info->mining);
    }
    t.items.push_back(scenario_token(scenario));
    std::sort(t.items.begin(), t.items.end());
    t.items.erase(std::unique(t.items.begin(), t.items.end()), t.items.end());
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Itemset> apriori_frequent_itemsets(const std::vector<Transaction>& transactions,
                                               double min_support, int threads) {
  if (!(min_support > 0.0) || min_support > 1.0)
    throw Error("min_support must lie in (0, 1], got " + format_fixed(min_support, 4));
  std::vector<Itemset> result;
  if (transactions.empty()) return result;

  const TokenTable table(transactions);
  const std::vector<IdSet> rows = encode_ids(transactions, table);
  const std::size_t n = rows.size();

  std::vector<IdSet> level;
  level.reserve(table.tokens.size());
  for (int id = 0; id < static_cast<int>(table.tokens.size()); ++id) level.push_back({id});

  while (!level.empty()) {
    const std::vector<long long> counts = count_candidates(rows, level, threads);
    std::vector<IdSet> frequent;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (!meets_support(counts[i], n, min_support)) continue;
      frequent.push_back(level[i]);
      result.push_back({table.render(level[i]), counts[i],
                        static_cast<double>(counts[i]) / static_cast<double>(n)});
    }
    level = next_candidates(frequent);
  }

  std::sort(result.begin(), result.end(), [](const Itemset& a, const Itemset& b) {
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return a.items < b.items;
  });
  return result;
}

std::vector<AssociationRule> generate_rules(const std::vector<Itemset>& itemsets,
                                            const std::vector<Transaction>& transactions,
                                            double min_confidence, int min_len, int max_len) {
  if (min_len < 2) throw Error("rule min_len must be >= 2, got " + std::to_string(min_len));
  if (min_len > max_len)
    throw Error("rule min_len " + std::to_string(min_len) + " exceeds max_len " +
                std::to_string(max_len));

  std::map<std::vector<std::string>, long long> counts;
  for (const auto& s : itemsets) counts[s.items] = s.count;
  auto count_of = [&](const std::vector<std::string>& items) {
    const auto it = counts.find(items);
    if (it != counts.end()) return it->second;
    return support_count(transactions, items);  // subsets of frequent sets are frequent;
                                                // this path only serves foreign item lists
  };

  const long long n = static_cast<long long>(transactions.size());
  std::vector<AssociationRule> rules;
  for (const auto& itemset : itemsets) {
    const int size = static_cast<int>(itemset.items.size());
    if (size < min_len || size > max_len || size < 2) continue;

    const unsigned full = (1u << size) - 1u;
    for (unsigned mask = 1; mask < full; ++mask) {
      AssociationRule rule;
      for (int bit = 0; bit < size; ++bit) {
        if (mask & (1u << bit))
          rule.antecedent.push_back(itemset.items[bit]);
        else
          rule.consequent.push_back(itemset.items[bit]);
      }
      rule.joint_count = itemset.count;
      rule.antecedent_count = count_of(rule.antecedent);
      rule.consequent_count = count_of(rule.consequent);
      rule.universe = n;
      rule.support = static_cast<double>(rule.joint_count) / static_cast<double>(n);
      rule.confidence =
          static_cast<double>(rule.joint_count) / static_cast<double>(rule.antecedent_count);
      rule.lift = rule.confidence /
                  (static_cast<double>(rule.consequent_count) / static_cast<double>(n));
      if (rule.confidence >= min_confidence) rules.push_back(std::move(rule));
    }
  }

  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    const std::size_t at = a.antecedent.size() + a.consequent.size();
    const std::size_t bt = b.antecedent.size() + b.consequent.size();
    if (at != bt) return at < bt;
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return rules;
}

std::vector<AssociationRule> filter_and_rank(std::vector<AssociationRule> rules, double min_lift,
                                             const std::optional<std::string>& consequent_token) {
  std::vector<AssociationRule> kept;
  for (auto& rule : rules) {
    if (!(rule.lift > min_lift)) continue;
    if (consequent_token.has_value() &&
        (rule.consequent.size() != 1 || rule.consequent.front() != *consequent_token))
      continue;
    kept.push_back(std::move(rule));
  }

  std::vector<AssociationRule> survivors;
  for (const auto& rule : kept) {
    const bool shadowed = std::any_of(kept.begin(), kept.end(), [&](const AssociationRule& other) {
      return other.consequent == rule.consequent &&
             other.antecedent.size() < rule.antecedent.size() &&
             other.confidence >= rule.confidence &&
             std::includes(rule.antecedent.begin(), rule.antecedent.end(),
                           other.antecedent.begin(), other.antecedent.end());
    });
    if (!shadowed) survivors.push_back(rule);
  }

  std::sort(survivors.begin(), survivors.end(),
            [](const AssociationRule& a, const AssociationRule& b) {
              if (a.support != b.support) return a.support > b.support;
              if (a.confidence != b.confidence) return a.confidence > b.confidence;
              if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
              return a.consequent < b.consequent;
            });
  return survivors;
}

long long support_count(const std::vector<Transaction>& transactions,
                        const std::vector<std::string>& items) {
  std::vector<std::string> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  long long count = 0;
  for (const auto& t : transactions)
    if (std::includes(t.items.begin(), t.items.end(), sorted.begin(), sorted.end())) ++count;
  return count;
}

std::string mined_rules_to_csv(const std::vector<AssociationRule>& rules) {
  std::string out = "antecedent,consequent,support,confidence,lift\n";
  for (const auto& rule : rules) {
    out += join(rule.antecedent, " + ");
    out += ",";
    out += join(rule.consequent, " + ");
    out += "," + format_fixed(round_half_up(rule.support, 3), 3);
    out += "," + format_fixed(round_half_up(rule.confidence, 3), 3);
    out += "," + format_fixed(round_half_up(rule.lift, 3), 3);
    out += "\n";
  }
  return out;
}

}  // namespace avscen
