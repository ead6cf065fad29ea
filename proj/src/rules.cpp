#include "cbp/rules.hpp"

#include <set>
#include <sstream>

#include "cbp/error.hpp"
#include "cbp/text.hpp"

namespace cbp {

std::string_view to_string(Builtin b) {
    switch (b) {
    case Builtin::SubstringBefore: return "swrlb:substringBefore";
    case Builtin::ContainsIgnoreCase: return "swrlb:containsIgnoreCase";
    }
    return "?";
}

std::size_t arity(Builtin b) { return b == Builtin::SubstringBefore ? 3 : 2; }

std::string builtin_substring_before(std::string_view input, std::string_view separator) {
    if (separator.empty()) fail(ErrorCode::EmptySeparator, "substringBefore separator is empty");
    auto pos = input.find(separator);
    return std::string(pos == std::string_view::npos ? input : input.substr(0, pos));
}

bool builtin_contains_ignore_case(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) fail(ErrorCode::EmptyNeedle, "containsIgnoreCase needle is empty");
    return to_lower_ascii(haystack).find(to_lower_ascii(needle)) != std::string::npos;
}

namespace {

std::string format_term(const RuleTerm& t) {
    switch (t.kind) {
    case RuleTerm::Kind::Variable: return "?" + t.value;
    case RuleTerm::Kind::Constant: return t.value;
    case RuleTerm::Kind::Literal: return "\"" + t.value + "\"";
    }
    return {};
}

// Built-in argument positions that must be bound before evaluation.
std::vector<std::size_t> builtin_inputs(Builtin b) {
    return b == Builtin::SubstringBefore ? std::vector<std::size_t>{1, 2} : std::vector<std::size_t>{0, 1};
}

}  // namespace

std::string format_atom(const Atom& atom) {
    return std::visit(
        [](const auto& a) -> std::string {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, ConceptAtom>) {
                return std::string(to_string(a.type)) + "(" + format_term(a.arg) + ")";
            } else if constexpr (std::is_same_v<A, PropertyAtom>) {
                return std::string(to_string(a.predicate)) + "(" + format_term(a.subject) + ", " +
                       format_term(a.object) + ")";
            } else {
                std::string s = std::string(to_string(a.builtin)) + "(";
                for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? ", " : "") + format_term(a.args[i]);
                return s + ")";
            }
        },
        atom);
}

std::string format_rule(const Rule& rule) {
    std::string s = rule.id + ": ";
    for (std::size_t i = 0; i < rule.body.size(); ++i) s += (i ? " ^ " : "") + format_atom(rule.body[i]);
    s += " => ";
    for (std::size_t i = 0; i < rule.head.size(); ++i) s += (i ? " ^ " : "") + format_atom(rule.head[i]);
    return s;
}

std::string dump_rules(const std::vector<Rule>& rules) {
    std::ostringstream os;
    for (const auto& r : rules) {
        os << r.id << ":\n";
        for (const auto& a : r.body) os << "    " << format_atom(a) << '\n';
        os << "  =>\n";
        for (const auto& a : r.head) os << "    " << format_atom(a) << '\n';
        for (const auto& [v, sk] : r.skolems) {
            os << "  skolem ?" << v << " = " << sk.prefix;
            for (const auto& sv : sk.vars) os << " ?" << sv;
            os << '\n';
        }
        os << '\n';
    }
    return os.str();
}

void validate_rule(const Rule& rule) {
    auto bad = [&](const std::string& why) { fail(ErrorCode::MalformedRule, rule.id + ": " + why); };
    if (rule.id.empty()) fail(ErrorCode::MalformedRule, "rule without id");
    if (rule.body.empty()) bad("empty body");

    std::set<std::string> bound;
    auto bind = [&](const RuleTerm& t) {
        if (t.is_var()) bound.insert(t.value);
    };
    auto require = [&](const RuleTerm& t, const char* where) {
        if (t.is_var() && !bound.contains(t.value)) bad(std::string("unbound ?") + t.value + " in " + where);
    };
    for (const auto& atom : rule.body) {
        if (const auto* b = std::get_if<BuiltinAtom>(&atom)) {
            if (b->args.size() != arity(b->builtin)) bad("wrong arity for " + std::string(to_string(b->builtin)));
            for (auto i : builtin_inputs(b->builtin)) require(b->args[i], "built-in input");
            for (const auto& a : b->args) bind(a);
        } else if (const auto* c = std::get_if<ConceptAtom>(&atom)) {
            if (c->arg.kind == RuleTerm::Kind::Literal) bad("literal in concept atom");
            bind(c->arg);
        } else {
            const auto& p = std::get<PropertyAtom>(atom);
            if (p.subject.kind == RuleTerm::Kind::Literal) bad("literal subject");
            bind(p.subject);
            bind(p.object);
        }
    }

    std::set<std::string> typed_skolems;
    for (const auto& [v, sk] : rule.skolems) {
        if (bound.contains(v)) bad("skolem ?" + v + " is body-bound");
        if (sk.prefix.empty() || sk.vars.empty()) bad("empty skolem template for ?" + v);
        for (const auto& sv : sk.vars)
            if (!bound.contains(sv)) bad("skolem ?" + v + " uses unbound ?" + sv);
    }
    auto head_ok = [&](const RuleTerm& t) {
        if (t.is_var() && !bound.contains(t.value) && !rule.skolems.contains(t.value))
            bad("head variable ?" + t.value + " neither bound nor skolemized");
    };
    if (rule.head.empty()) bad("empty head");
    for (const auto& atom : rule.head) {
        if (std::holds_alternative<BuiltinAtom>(atom)) bad("built-in in head");
        if (const auto* c = std::get_if<ConceptAtom>(&atom)) {
            head_ok(c->arg);
            if (c->arg.is_var() && rule.skolems.contains(c->arg.value)) typed_skolems.insert(c->arg.value);
        } else {
            const auto& p = std::get<PropertyAtom>(atom);
            head_ok(p.subject);
            head_ok(p.object);
        }
    }
    for (const auto& [v, _] : rule.skolems)
        if (!typed_skolems.contains(v)) bad("skolem ?" + v + " has no head concept atom");
}

}  // namespace cbp
