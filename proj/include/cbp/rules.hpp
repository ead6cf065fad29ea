#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cbp/knowledge_base.hpp"

namespace cbp {

// Argument of a rule atom.
struct RuleTerm {
    enum class Kind { Variable, Constant, Literal };
    Kind kind = Kind::Variable;
    std::string value;

    bool is_var() const { return kind == Kind::Variable; }
    bool operator==(const RuleTerm&) const = default;
};

inline RuleTerm var(std::string name) { return {RuleTerm::Kind::Variable, std::move(name)}; }
inline RuleTerm constant(std::string id) { return {RuleTerm::Kind::Constant, std::move(id)}; }
inline RuleTerm literal(std::string text) { return {RuleTerm::Kind::Literal, std::move(text)}; }

struct ConceptAtom {
    Concept type;
    RuleTerm arg;
};

struct PropertyAtom {
    Predicate predicate;
    RuleTerm subject;
    RuleTerm object;
};

enum class Builtin {
    SubstringBefore,     // (result, input, separator)
    ContainsIgnoreCase,  // (haystack, needle)
};

struct BuiltinAtom {
    Builtin builtin;
    std::vector<RuleTerm> args;
};

using Atom = std::variant<ConceptAtom, PropertyAtom, BuiltinAtom>;

// Head-only variable minted as slug_join(prefix, bound values of vars...).
struct SkolemTemplate {
    std::string prefix;
    std::vector<std::string> vars;
};

struct Rule {
    std::string id;
    std::vector<Atom> body;
    std::vector<Atom> head;
    std::map<std::string, SkolemTemplate> skolems;
};

using Binding = std::map<std::string, Term>;

std::string_view to_string(Builtin b);
std::size_t arity(Builtin b);

// Throws MalformedRule unless: body non-empty; built-in arities hold and
// their inputs are bound by earlier atoms; heads hold only kind and
// property atoms; every head variable is body-bound or skolemized; every
// skolem variable is typed by a head concept atom.
void validate_rule(const Rule& rule);

// "GR1a: Participant(?x) ^ playRole(?x, ?y) => provideAService(?x, ?z)"
std::string format_atom(const Atom& atom);
std::string format_rule(const Rule& rule);
std::string dump_rules(const std::vector<Rule>& rules);

// Built-in semantics.
// Prefix of `input` before the first `separator`; whole input when the
// separator is absent. Throws EmptySeparator.
std::string builtin_substring_before(std::string_view input, std::string_view separator);
// ASCII case-insensitive containment. Throws EmptyNeedle.
bool builtin_contains_ignore_case(std::string_view haystack, std::string_view needle);

}  // namespace cbp
