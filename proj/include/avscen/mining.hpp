#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avscen/model.hpp"

namespace avscen {

/// One record rendered as a basket of "Field.Name=label" tokens plus a
/// scenario-label token. At most one token per field; absent fields
/// contribute nothing.
struct Transaction {
  std::string record_id;
  std::vector<std::string> items;  // sorted, unique
};

struct Itemset {
  std::vector<std::string> items;  // sorted
  long long count = 0;
  double support = 0.0;  // count / universe size
};

struct AssociationRule {
  std::vector<std::string> antecedent;  // sorted
  std::vector<std::string> consequent;  // sorted, disjoint from antecedent
  long long joint_count = 0;
  long long antecedent_count = 0;
  long long consequent_count = 0;
  long long universe = 0;
  double support = 0.0;     // joint_count / universe
  double confidence = 0.0;  // joint_count / antecedent_count
  double lift = 0.0;        // confidence / (consequent_count / universe)
};

inline const char* scenario_token_prefix() { return "Scenario="; }

/// Token carried by every transaction for its assigned scenario.
std::string scenario_token(int scenario_id);

/// Builds the mining universe: records whose assigned scenario is in
/// `universe_scenarios` (all records when empty), tokenized over
/// `field_selection`. Unknown field names abort.
std::vector<Transaction> encode_transactions(
    const std::vector<CrashRecord>& records, const std::vector<std::string>& field_selection,
    const std::map<std::string, int>& assignments, const std::vector<int>& universe_scenarios,
    const FieldCatalog& catalog = FieldCatalog::standard());

/// Level-wise Apriori over the transactions. Returns exactly the itemsets
/// with support >= min_support (support = count / N as a double), in
/// canonical order: by size, then lexicographic token order. Support
/// counting is integer; candidate generation uses anti-monotone pruning.
/// `threads` splits support counting; the result does not depend on it.
std::vector<Itemset> apriori_frequent_itemsets(const std::vector<Transaction>& transactions,
                                               double min_support, int threads = 1);

/// All rules from the frequent itemsets whose total item count lies in
/// [min_len, max_len] and whose confidence reaches min_confidence.
/// Canonical order: total size, then antecedent, then consequent.
std::vector<AssociationRule> generate_rules(const std::vector<Itemset>& itemsets,
                                            const std::vector<Transaction>& transactions,
                                            double min_confidence, int min_len = 3,
                                            int max_len = 6);

/// Keeps rules with lift > min_lift; when `consequent_token` is set, keeps
/// only rules whose consequent is exactly that token. A rule shadowed by a
/// proper-subset antecedent with the same consequent and confidence >= its
/// own is removed as redundant. Sorts by support desc, confidence desc,
/// antecedent, consequent.
std::vector<AssociationRule> filter_and_rank(std::vector<AssociationRule> rules, double min_lift,
                                             const std::optional<std::string>& consequent_token);

/// Occurrences of an itemset in the transactions (used for spot checks).
long long support_count(const std::vector<Transaction>& transactions,
                        const std::vector<std::string>& items);

/// Delimited mined-rule table: antecedent tokens joined by " + ", then
/// consequent, support, confidence, lift rounded to 3 decimals.
std::string mined_rules_to_csv(const std::vector<AssociationRule>& rules);

}  // namespace avscen
