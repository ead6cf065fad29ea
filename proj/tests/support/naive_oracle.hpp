#pragma once

// Independent fixpoint evaluator for checking the engine: no indexes, no
// deltas, every rule re-matched against a flat fact set each round until
// nothing changes. Concept membership is the triple (id, "a", Concept).

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cbp/knowledge_base.hpp"
#include "cbp/rules.hpp"
#include "cbp/text.hpp"

namespace oracle {

struct Value {
    std::string text;
    bool literal = false;
    auto operator<=>(const Value&) const = default;
};

using Row = std::tuple<std::string, std::string, Value>;  // subject, predicate | "a", object
using FactSet = std::set<Row>;
using Env = std::map<std::string, Value>;

inline FactSet from_kb(const cbp::KnowledgeBase& kb) {
    FactSet out;
    for (const cbp::Instance* i : kb.instances())
        for (auto c : i->concepts()) out.insert({i->id, "a", {std::string(cbp::to_string(c)), false}});
    for (const auto& f : kb.facts())
        out.insert({f.subject, std::string(cbp::to_string(f.predicate)), {f.object.value, f.object.is_literal()}});
    return out;
}

inline std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

class Evaluator {
public:
    Evaluator(const FactSet& facts, const cbp::Rule& rule) : facts_(facts), rule_(rule) {}

    std::vector<Env> matches() {
        Env env;
        go(0, env);
        return out_;
    }

private:
    std::optional<Value> get(const cbp::RuleTerm& t, const Env& env) const {
        if (t.kind == cbp::RuleTerm::Kind::Constant) return Value{t.value, false};
        if (t.kind == cbp::RuleTerm::Kind::Literal) return Value{t.value, true};
        auto it = env.find(t.value);
        if (it == env.end()) return std::nullopt;
        return it->second;
    }

    // Unify t with v; returns false on clash.
    static bool bind(const cbp::RuleTerm& t, const Value& v, Env& env) {
        if (!t.is_var()) return (t.kind == cbp::RuleTerm::Kind::Literal) == v.literal && t.value == v.text;
        auto [it, fresh] = env.emplace(t.value, v);
        return fresh || it->second == v;
    }

    void go(std::size_t i, const Env& env) {
        if (i == rule_.body.size()) {
            out_.push_back(env);
            return;
        }
        const auto& atom = rule_.body[i];
        if (const auto* c = std::get_if<cbp::ConceptAtom>(&atom)) {
            for (const auto& [s, p, o] : facts_) {
                if (p != "a" || o.text != cbp::to_string(c->type)) continue;
                Env e = env;
                if (bind(c->arg, {s, false}, e)) go(i + 1, e);
            }
        } else if (const auto* pa = std::get_if<cbp::PropertyAtom>(&atom)) {
            const std::string pred(cbp::to_string(pa->predicate));
            for (const auto& [s, p, o] : facts_) {
                if (p != pred) continue;
                Env e = env;
                if (bind(pa->subject, {s, false}, e) && bind(pa->object, o, e)) go(i + 1, e);
            }
        } else {
            const auto& b = std::get<cbp::BuiltinAtom>(atom);
            if (b.builtin == cbp::Builtin::SubstringBefore) {
                auto input = get(b.args[1], env), sep = get(b.args[2], env);
                if (!input || !sep || sep->text.empty()) return;
                auto pos = input->text.find(sep->text);
                Env e = env;
                if (bind(b.args[0], {pos == std::string::npos ? input->text : input->text.substr(0, pos), true}, e)) go(i + 1, e);
            } else {
                auto hay = get(b.args[0], env), needle = get(b.args[1], env);
                if (!hay || !needle || needle->text.empty()) return;
                if (lower(hay->text).find(lower(needle->text)) != std::string::npos) go(i + 1, env);
            }
        }
    }

    const FactSet& facts_;
    const cbp::Rule& rule_;
    std::vector<Env> out_;
};

inline std::vector<Row> heads(const cbp::Rule& rule, Env env) {
    for (const auto& [v, sk] : rule.skolems) {
        std::vector<std::string> parts{sk.prefix};
        for (const auto& x : sk.vars) parts.push_back(env.at(x).text);
        env[v] = {cbp::slug_join(parts), false};
    }
    auto val = [&](const cbp::RuleTerm& t) -> Value {
        if (t.is_var()) return env.at(t.value);
        return {t.value, t.kind == cbp::RuleTerm::Kind::Literal};
    };
    std::vector<Row> out;
    for (const auto& atom : rule.head) {
        if (const auto* c = std::get_if<cbp::ConceptAtom>(&atom))
            out.push_back({val(c->arg).text, "a", {std::string(cbp::to_string(c->type)), false}});
        else if (const auto* p = std::get_if<cbp::PropertyAtom>(&atom))
            out.push_back({val(p->subject).text, std::string(cbp::to_string(p->predicate)), val(p->object)});
    }
    return out;
}

inline FactSet fixpoint(FactSet facts, const std::vector<cbp::Rule>& rules, std::size_t max_rounds = 1000) {
    for (std::size_t round = 0; round < max_rounds; ++round) {
        FactSet next = facts;
        for (const auto& r : rules)
            for (const auto& env : Evaluator(facts, r).matches())
                for (auto& row : heads(r, env)) next.insert(std::move(row));
        if (next == facts) return facts;
        facts = std::move(next);
    }
    return facts;
}

}  // namespace oracle
