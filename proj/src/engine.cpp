#include "cbp/engine.hpp"

#include <algorithm>
#include <numeric>

#include "cbp/error.hpp"
#include "cbp/text.hpp"

namespace cbp {

namespace {

// Restricts one body atom to the delta during semi-naive evaluation.
struct Restriction {
    std::size_t atom = 0;
    const Delta* delta = nullptr;
};

class Matcher {
public:
    Matcher(const KnowledgeBase& kb, const Rule& rule, std::optional<Restriction> restriction)
        : kb_(kb), rule_(rule), restriction_(restriction) {}

    std::vector<Binding> run() {
        Binding b;
        step(0, b);
        return std::move(out_);
    }

private:
    std::optional<Term> resolve(const RuleTerm& t, const Binding& b) const {
        switch (t.kind) {
        case RuleTerm::Kind::Variable: {
            auto it = b.find(t.value);
            if (it == b.end()) return std::nullopt;
            return it->second;
        }
        case RuleTerm::Kind::Constant: return Term::id(t.value);
        case RuleTerm::Kind::Literal: return Term::literal(t.value);
        }
        return std::nullopt;
    }

    // Unifies term with value, extending b. Returns false on conflict.
    static bool unify(const RuleTerm& t, const Term& value, Binding& b, std::vector<std::string>& added) {
        if (t.is_var()) {
            auto it = b.find(t.value);
            if (it == b.end()) {
                b.emplace(t.value, value);
                added.push_back(t.value);
                return true;
            }
            return it->second == value;
        }
        Term c = t.kind == RuleTerm::Kind::Constant ? Term::id(t.value) : Term::literal(t.value);
        return c == value;
    }

    void step(std::size_t i, Binding& b) {
        if (i == rule_.body.size()) {
            out_.push_back(b);
            return;
        }
        const bool restricted = restriction_ && restriction_->atom == i;
        std::visit([&](const auto& atom) { match(atom, i, restricted, b); }, rule_.body[i]);
    }

    void try_extend(std::size_t i, Binding& b, std::initializer_list<std::pair<const RuleTerm*, Term>> pairs) {
        std::vector<std::string> added;
        bool ok = true;
        for (const auto& [t, v] : pairs) {
            if (!unify(*t, v, b, added)) {
                ok = false;
                break;
            }
        }
        if (ok) step(i + 1, b);
        for (const auto& v : added) b.erase(v);
    }

    void match(const ConceptAtom& a, std::size_t i, bool restricted, Binding& b) {
        auto bound = resolve(a.arg, b);
        if (restricted) {
            for (const auto& [id, c] : restriction_->delta->typings) {
                if (c != a.type) continue;
                if (bound && *bound != Term::id(id)) continue;
                try_extend(i, b, {{&a.arg, Term::id(id)}});
            }
            return;
        }
        if (bound) {
            if (!bound->is_literal() && kb_.has_concept(bound->value, a.type)) step(i + 1, b);
            return;
        }
        for (const auto& id : kb_.instances_of(a.type)) try_extend(i, b, {{&a.arg, Term::id(id)}});
    }

    void match(const PropertyAtom& a, std::size_t i, bool restricted, Binding& b) {
        auto s = resolve(a.subject, b);
        auto o = resolve(a.object, b);
        if (s && s->is_literal()) return;
        if (restricted) {
            auto it = restriction_->delta->facts.find(a.predicate);
            if (it == restriction_->delta->facts.end()) return;
            for (const auto& t : it->second) try_extend(i, b, {{&a.subject, Term::id(t.subject)}, {&a.object, t.object}});
            return;
        }
        if (s) {
            if (const auto* objs = kb_.objects(a.predicate, s->value)) {
                if (o) {
                    if (objs->contains(*o)) step(i + 1, b);
                    return;
                }
                for (const auto& obj : *objs) try_extend(i, b, {{&a.object, obj}});
            }
            return;
        }
        if (o) {
            if (const auto* subs = kb_.subjects(a.predicate, *o))
                for (const auto& sub : *subs) try_extend(i, b, {{&a.subject, Term::id(sub)}});
            return;
        }
        for (const auto& t : kb_.with_predicate(a.predicate))
            try_extend(i, b, {{&a.subject, Term::id(t.subject)}, {&a.object, t.object}});
    }

    void match(const BuiltinAtom& a, std::size_t i, bool /*restricted*/, Binding& b) {
        switch (a.builtin) {
        case Builtin::SubstringBefore: {
            auto input = resolve(a.args[1], b);
            auto sep = resolve(a.args[2], b);
            if (!input || !sep || sep->value.empty()) return;
            Term result = Term::literal(builtin_substring_before(input->value, sep->value));
            try_extend(i, b, {{&a.args[0], result}});
            return;
        }
        case Builtin::ContainsIgnoreCase: {
            auto hay = resolve(a.args[0], b);
            auto needle = resolve(a.args[1], b);
            // An empty needle leaves the atom unsatisfied instead of aborting the round.
            if (!hay || !needle || needle->value.empty()) return;
            if (builtin_contains_ignore_case(hay->value, needle->value)) step(i + 1, b);
            return;
        }
        }
    }

    const KnowledgeBase& kb_;
    const Rule& rule_;
    std::optional<Restriction> restriction_;
    std::vector<Binding> out_;
};

std::string label_of(const KnowledgeBase& kb, const Term& t) {
    if (t.is_literal()) return t.value;
    const Instance* inst = kb.find_instance(t.value);
    return inst ? inst->label : t.value;
}

void instantiate(const KnowledgeBase& kb, const Rule& rule, const Binding& body, Derivation& out) {
    Binding b = body;
    std::map<std::string, std::string> minted_labels;
    for (const auto& [v, sk] : rule.skolems) {
        std::vector<std::string> parts{sk.prefix};
        std::string label = sk.prefix;
        for (std::size_t k = 0; k < sk.vars.size(); ++k) {
            const Term& val = b.at(sk.vars[k]);
            parts.push_back(val.value);
            label += (k == 0 ? " " : " / ") + label_of(kb, val);
        }
        std::string id = slug_join(parts);
        b[v] = Term::id(id);
        minted_labels[id] = label;
    }
    auto value = [&](const RuleTerm& t) -> Term {
        switch (t.kind) {
        case RuleTerm::Kind::Variable: return b.at(t.value);
        case RuleTerm::Kind::Constant: return Term::id(t.value);
        case RuleTerm::Kind::Literal: return Term::literal(t.value);
        }
        return {};
    };
    for (const auto& atom : rule.head) {
        if (const auto* c = std::get_if<ConceptAtom>(&atom)) {
            Term t = value(c->arg);
            auto ml = minted_labels.find(t.value);
            bool minted = ml != minted_labels.end();
            out.typings.push_back({t.value, c->type, minted ? ml->second : label_of(kb, t), minted});
        } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
            out.facts.push_back({value(p->subject).value, p->predicate, value(p->object), Provenance::derived(rule.id)});
        }
    }
}

void normalize(Derivation& d) {
    std::sort(d.typings.begin(), d.typings.end());
    d.typings.erase(std::unique(d.typings.begin(), d.typings.end()), d.typings.end());
    auto less = [](const Fact& a, const Fact& b) { return a.triple() < b.triple(); };
    auto eq = [](const Fact& a, const Fact& b) { return a.triple() == b.triple(); };
    std::sort(d.facts.begin(), d.facts.end(), less);
    d.facts.erase(std::unique(d.facts.begin(), d.facts.end(), eq), d.facts.end());
}

bool is_relational(const Atom& a) { return !std::holds_alternative<BuiltinAtom>(a); }

}  // namespace

Derivation evaluate_rule(const KnowledgeBase& kb, const Rule& rule) {
    Derivation d;
    for (const auto& b : Matcher(kb, rule, std::nullopt).run()) instantiate(kb, rule, b, d);
    normalize(d);
    return d;
}

Derivation evaluate_rule_delta(const KnowledgeBase& kb, const Rule& rule, const Delta& delta) {
    Derivation d;
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        if (!is_relational(rule.body[i])) continue;
        for (const auto& b : Matcher(kb, rule, Restriction{i, &delta}).run()) instantiate(kb, rule, b, d);
    }
    normalize(d);
    return d;
}

std::size_t DeductionReport::derived_count() const {
    std::size_t n = 0;
    for (const auto& [_, facts] : derived) n += facts.size();
    return n;
}

DeductionReport run_to_fixpoint(KnowledgeBase& kb, const std::vector<Rule>& rules, const FixpointOptions& options) {
    for (const auto& r : rules) {
        validate_rule(r);
        kb.register_rule(r.id);
    }
    std::vector<std::size_t> order = options.order;
    if (order.empty()) {
        order.resize(rules.size());
        std::iota(order.begin(), order.end(), 0);
    }
    if (order.size() != rules.size()) fail(ErrorCode::MalformedRule, "rule order does not cover the rule list");

    DeductionReport report;
    Delta delta;
    bool first = true;
    while (true) {
        if (++report.iterations > options.iteration_cap)
            fail(ErrorCode::IterationCap, "no fixpoint after " + std::to_string(options.iteration_cap) + " rounds");
        Delta next;
        for (std::size_t idx : order) {
            const Rule& rule = rules.at(idx);
            Derivation d = (first || !options.semi_naive) ? evaluate_rule(kb, rule) : evaluate_rule_delta(kb, rule, delta);
            const Provenance prov = Provenance::derived(rule.id);
            for (const auto& t : d.typings) {
                bool changed = false;
                if (t.minted && !kb.find_instance(t.id)) {
                    changed = kb.add_instance(t.id, t.label, {t.type}, prov);
                    report.created_instances.push_back(t.id);
                } else {
                    changed = kb.add_concept(t.id, t.type, prov);
                }
                if (changed) {
                    report.typings[rule.id].push_back(t);
                    next.typings.insert({t.id, t.type});
                }
            }
            for (const auto& f : d.facts) {
                if (kb.assert_fact(f)) {
                    report.derived[rule.id].push_back(f);
                    next.facts[f.predicate].push_back(f.triple());
                }
            }
        }
        first = false;
        if (next.empty()) break;
        delta = std::move(next);
    }
    for (auto& [_, facts] : report.derived)
        std::sort(facts.begin(), facts.end(), [](const Fact& a, const Fact& b) { return a.triple() < b.triple(); });
    for (auto& [_, ts] : report.typings) std::sort(ts.begin(), ts.end());
    std::sort(report.created_instances.begin(), report.created_instances.end());
    return report;
}

Deduction deduce(const KnowledgeBase& input, const std::vector<Rule>& rules, const FixpointOptions& options) {
    Deduction out{input, {}};
    out.report = run_to_fixpoint(out.kb, rules, options);
    return out;
}

}  // namespace cbp
