#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cbp/knowledge_base.hpp"

namespace cbp {

struct QueryTerm {
    enum class Kind { Variable, Id, Literal };
    Kind kind = Kind::Variable;
    std::string value;  // variable name without '?', id, or literal text

    bool is_var() const { return kind == Kind::Variable; }
    bool operator==(const QueryTerm&) const = default;
};

// Predicate position: a variable, "a" (concept membership) or a predicate name.
struct TriplePattern {
    QueryTerm subject;
    QueryTerm predicate;
    QueryTerm object;
    bool operator==(const TriplePattern&) const = default;
};

// Conjunctive SELECT query: no OPTIONAL, FILTER or property paths.
struct Query {
    std::vector<std::string> select;
    std::vector<TriplePattern> where;
    bool operator==(const Query&) const = default;
};

struct ResultValue {
    enum class Kind { Uri, Literal };
    Kind kind = Kind::Uri;
    std::string value;  // for Uri: the local id

    bool operator==(const ResultValue&) const = default;
    auto operator<=>(const ResultValue&) const = default;
};

struct ResultTable {
    std::vector<std::string> variables;
    std::vector<std::vector<ResultValue>> rows;  // distinct, sorted
    bool operator==(const ResultTable&) const = default;
};

// Minimal text syntax:
//   [PREFIX p: <uri>]* SELECT ?v ... WHERE { s p o . ... }
// Terms: ?var, "literal", bare or prefixed ids (prefix dropped), <...#id>;
// `a` / rdf:type in predicate position tests concept membership. Throws
// MalformedQuery.
Query parse_query(const std::string& text);
std::string format_query(const Query& q);

// Throws MalformedQuery unless every select variable occurs in a clause,
// predicates name the vocabulary, and concept objects of `a` are concepts.
void validate_query(const Query& q);

ResultTable run_query(const KnowledgeBase& kb, const Query& q);

// Extraction queries over a deduced KB, keyed by name:
// common-goals, relationships, topologies, participants-roles,
// abstract-services, business-services, dependencies, mis-services.
const std::map<std::string, Query>& canned_queries();

inline constexpr const char* kDefaultResultBase = "urn:cbp:kb#";

// W3C sparql-results XML; Uri values are written as base + id.
std::string serialize_results(const ResultTable& table, const std::string& base = kDefaultResultBase);
// Inverse of serialize_results (strips base from uris). Throws ParseError.
ResultTable parse_results(const std::string& xml, const std::string& base = kDefaultResultBase);

// W3C sparql-results JSON mirror.
nlohmann::json results_to_json(const ResultTable& table, const std::string& base = kDefaultResultBase);

}  // namespace cbp
