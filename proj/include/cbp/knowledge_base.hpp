#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cbp/vocabulary.hpp"

namespace cbp {

// Where a fact or a concept membership came from.
struct Provenance {
    std::optional<std::string> rule;  // empty: asserted

    static Provenance asserted() { return {}; }
    static Provenance derived(std::string rule_id) { return {std::move(rule_id)}; }
    bool is_asserted() const { return !rule.has_value(); }
    bool operator==(const Provenance&) const = default;
};

// Object position of a fact: an instance/enum id or a string literal.
struct Term {
    enum class Kind { Id, Literal };
    Kind kind = Kind::Id;
    std::string value;

    static Term id(std::string v) { return {Kind::Id, std::move(v)}; }
    static Term literal(std::string v) { return {Kind::Literal, std::move(v)}; }
    bool is_literal() const { return kind == Kind::Literal; }

    bool operator==(const Term&) const = default;
    std::strong_ordering operator<=>(const Term& o) const {
        if (auto c = value <=> o.value; c != 0) return c;
        return kind <=> o.kind;
    }
};

struct Triple {
    std::string subject;
    Predicate predicate{};
    Term object;

    bool operator==(const Triple&) const = default;
    // Lexicographic by subject id, predicate name, object.
    std::strong_ordering operator<=>(const Triple& o) const;
};

struct Fact {
    std::string subject;
    Predicate predicate{};
    Term object;
    Provenance provenance;

    Triple triple() const { return {subject, predicate, object}; }
    bool operator==(const Fact&) const = default;
};

struct Instance {
    std::string id;
    std::string label;
    std::map<Concept, Provenance> types;

    bool has(Concept c) const { return types.contains(c); }
    std::vector<Concept> concepts() const;
    // True when no membership was asserted, i.e. the instance was minted by a rule.
    bool minted() const;
    bool operator==(const Instance&) const = default;
};

// Optional-position triple pattern for match().
struct FactPattern {
    std::optional<std::string> subject;
    std::optional<Predicate> predicate;
    std::optional<Term> object;
};

class KnowledgeBase;
using Snapshot = std::shared_ptr<const KnowledgeBase>;

// Typed instances plus a set of provenance-tagged triples. Value type:
// copies are independent. Mutation requires exclusive access; a Snapshot
// is immutable and may be shared across threads.
class KnowledgeBase {
public:
    // Adds the instance or merges concepts into an existing one. Returns
    // true if anything changed. Throws ValidationError on empty id/label
    // or empty concept list.
    bool add_instance(const std::string& id, const std::string& label, const std::vector<Concept>& concepts,
                      const Provenance& provenance = Provenance::asserted());

    // Adds one concept membership to an existing instance; true if new.
    bool add_concept(const std::string& id, Concept kind, const Provenance& provenance);

    // Inserts the fact once. Returns true if it was new. An asserted fact
    // upgrades a previously derived copy; a derived copy never overrides
    // an asserted one. Throws UnknownInstance / DomainRangeViolation.
    bool assert_fact(const Fact& fact);

    void register_rule(const std::string& rule_id) { rules_.insert(rule_id); }
    bool has_rule(const std::string& rule_id) const { return rules_.contains(rule_id); }
    const std::set<std::string>& rules() const { return rules_; }

    const Instance* find_instance(const std::string& id) const;
    bool has_concept(const std::string& id, Concept c) const;
    const std::set<std::string>& instances_of(Concept c) const;
    std::vector<const Instance*> instances() const;
    std::size_t instance_count() const { return instances_.size(); }

    bool contains(const Triple& t) const { return facts_.contains(t); }
    std::optional<Provenance> provenance_of(const Triple& t) const;

    // Facts unifying with the pattern, ordered lexicographically.
    std::vector<Fact> match(const FactPattern& pattern) const;
    std::vector<Fact> facts() const { return match({}); }
    std::size_t fact_count() const { return facts_.size(); }

    // Index lookups used by the rule engine.
    const std::set<Term>* objects(Predicate p, const std::string& subject) const;
    const std::set<std::string>* subjects(Predicate p, const Term& object) const;
    const std::set<Triple>& with_predicate(Predicate p) const;

    // Removes every derived fact, derived concept membership and minted
    // instance, restoring the asserted state.
    void drop_derived();

    Snapshot snapshot() const { return std::make_shared<const KnowledgeBase>(*this); }

    bool operator==(const KnowledgeBase& o) const {
        return instances_ == o.instances_ && facts_ == o.facts_;
    }

private:
    void index_fact(const Triple& t);
    void check_fact(const Fact& f) const;

    std::map<std::string, Instance> instances_;
    std::map<Concept, std::set<std::string>> by_concept_;
    std::map<Triple, Provenance> facts_;
    std::map<Predicate, std::set<Triple>> by_predicate_;
    std::map<std::pair<Predicate, std::string>, std::set<Term>> sp_index_;
    std::map<std::pair<Predicate, Term>, std::set<std::string>> po_index_;
    std::set<std::string> rules_;
};

std::string format_fact(const Fact& f);

}  // namespace cbp
