#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cbp/knowledge_base.hpp"
#include "cbp/rules.hpp"

namespace cbp {

// Concept membership produced by a head concept atom.
struct Typing {
    std::string id;
    Concept type;
    std::string label;  // used when the instance is minted
    bool minted = false;

    auto operator<=>(const Typing&) const = default;
};

// Head instantiations of one rule: facts are Derived(rule.id).
struct Derivation {
    std::vector<Typing> typings;
    std::vector<Fact> facts;
};

// Facts and typings that appeared during the previous round.
struct Delta {
    std::map<Predicate, std::vector<Triple>> facts;
    std::set<std::pair<std::string, Concept>> typings;

    bool empty() const { return facts.empty() && typings.empty(); }
};

// All head instantiations under every satisfying binding, over the whole KB.
Derivation evaluate_rule(const KnowledgeBase& kb, const Rule& rule);

// Instantiations whose binding uses at least one delta fact or typing.
Derivation evaluate_rule_delta(const KnowledgeBase& kb, const Rule& rule, const Delta& delta);

struct DeductionReport {
    std::map<std::string, std::vector<Fact>> derived;  // by rule id, sorted
    std::map<std::string, std::vector<Typing>> typings;  // by rule id, sorted
    std::vector<std::string> created_instances;        // sorted
    std::size_t iterations = 0;

    std::size_t derived_count() const;
};

struct FixpointOptions {
    // Rule application order within a round, as indices into the rule list.
    // Empty: list order.
    std::vector<std::size_t> order;
    std::size_t iteration_cap = 10'000;
    // Off: re-evaluate every rule over the full KB each round.
    bool semi_naive = true;
};

// Applies rules until no rule derives anything new. Mutates kb and throws
// IterationCap if the cap is exceeded.
DeductionReport run_to_fixpoint(KnowledgeBase& kb, const std::vector<Rule>& rules,
                                 const FixpointOptions& options = {});

struct Deduction {
    KnowledgeBase kb;
    DeductionReport report;
};

// Pure variant over an input snapshot.
Deduction deduce(const KnowledgeBase& input, const std::vector<Rule>& rules, const FixpointOptions& options = {});

}  // namespace cbp
