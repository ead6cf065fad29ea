#include "cbp/knowledge_base.hpp"

#include <algorithm>

#include "cbp/error.hpp"

namespace cbp {

std::strong_ordering Triple::operator<=>(const Triple& o) const {
    if (auto c = subject <=> o.subject; c != 0) return c;
    if (auto c = to_string(predicate) <=> to_string(o.predicate); c != 0) return c;
    return object <=> o.object;
}

std::vector<Concept> Instance::concepts() const {
    std::vector<Concept> out;
    for (const auto& [c, _] : types) out.push_back(c);
    return out;
}

bool Instance::minted() const {
    return std::none_of(types.begin(), types.end(), [](const auto& kv) { return kv.second.is_asserted(); });
}

bool KnowledgeBase::add_instance(const std::string& id, const std::string& label,
                                 const std::vector<Concept>& concepts, const Provenance& provenance) {
    if (id.empty()) fail(ErrorCode::ValidationError, "instance id is empty");
    if (label.empty()) fail(ErrorCode::ValidationError, "instance '" + id + "' has an empty label");
    if (concepts.empty()) fail(ErrorCode::ValidationError, "instance '" + id + "' has no concept");
    if (find_enum_individual(id)) fail(ErrorCode::ValidationError, "'" + id + "' is a reserved enumerated individual");

    bool changed = false;
    auto [it, inserted] = instances_.try_emplace(id);
    if (inserted) {
        it->second.id = id;
        it->second.label = label;
        changed = true;
    }
    for (Concept c : concepts) changed |= add_concept(id, c, provenance);
    return changed;
}

bool KnowledgeBase::add_concept(const std::string& id, Concept kind, const Provenance& provenance) {
    auto it = instances_.find(id);
    if (it == instances_.end()) fail(ErrorCode::UnknownInstance, id);
    if (!provenance.is_asserted() && !has_rule(*provenance.rule))
        fail(ErrorCode::MalformedRule, "unregistered rule '" + *provenance.rule + "'");
    auto& types = it->second.types;
    auto t = types.find(kind);
    if (t == types.end()) {
        types.emplace(kind, provenance);
        by_concept_[kind].insert(id);
        return true;
    }
    if (provenance.is_asserted() && !t->second.is_asserted()) {
        t->second = provenance;
        return true;
    }
    return false;
}

void KnowledgeBase::check_fact(const Fact& f) const {
    const auto& sig = signature(f.predicate);
    const Instance* subject = find_instance(f.subject);
    if (!subject) fail(ErrorCode::UnknownInstance, "subject '" + f.subject + "'");
    auto in_any = [](const Instance& inst, const std::vector<Concept>& cs) {
        return cs.empty() || std::any_of(cs.begin(), cs.end(), [&](Concept c) { return inst.has(c); });
    };
    const std::string what = format_fact(f);
    if (!in_any(*subject, sig.domain)) fail(ErrorCode::DomainRangeViolation, "domain of " + what);

    switch (sig.range_kind) {
    case RangeKind::Literal:
        if (!f.object.is_literal()) fail(ErrorCode::DomainRangeViolation, "literal expected in " + what);
        break;
    case RangeKind::Enum: {
        if (f.object.is_literal()) fail(ErrorCode::DomainRangeViolation, "enumerated value expected in " + what);
        auto e = find_enum_individual(f.object.value);
        if (!e || e->id != f.object.value ||
            std::find(sig.enum_range.begin(), sig.enum_range.end(), e->group) == sig.enum_range.end())
            fail(ErrorCode::DomainRangeViolation, "range of " + what);
        break;
    }
    case RangeKind::Instance: {
        if (f.object.is_literal()) fail(ErrorCode::DomainRangeViolation, "instance expected in " + what);
        const Instance* object = find_instance(f.object.value);
        if (!object) fail(ErrorCode::UnknownInstance, "object '" + f.object.value + "'");
        if (!in_any(*object, sig.range)) fail(ErrorCode::DomainRangeViolation, "range of " + what);
        break;
    }
    }
    if (!f.provenance.is_asserted() && !has_rule(*f.provenance.rule))
        fail(ErrorCode::MalformedRule, "unregistered rule '" + *f.provenance.rule + "'");
}

bool KnowledgeBase::assert_fact(const Fact& fact) {
    check_fact(fact);
    Triple t = fact.triple();
    auto it = facts_.find(t);
    if (it != facts_.end()) {
        if (fact.provenance.is_asserted() && !it->second.is_asserted()) {
            it->second = fact.provenance;
            return true;
        }
        return false;
    }
    facts_.emplace(t, fact.provenance);
    index_fact(t);
    return true;
}

void KnowledgeBase::index_fact(const Triple& t) {
    by_predicate_[t.predicate].insert(t);
    sp_index_[{t.predicate, t.subject}].insert(t.object);
    po_index_[{t.predicate, t.object}].insert(t.subject);
}

const Instance* KnowledgeBase::find_instance(const std::string& id) const {
    auto it = instances_.find(id);
    return it == instances_.end() ? nullptr : &it->second;
}

bool KnowledgeBase::has_concept(const std::string& id, Concept c) const {
    const Instance* i = find_instance(id);
    return i && i->has(c);
}

const std::set<std::string>& KnowledgeBase::instances_of(Concept c) const {
    static const std::set<std::string> kEmpty;
    auto it = by_concept_.find(c);
    return it == by_concept_.end() ? kEmpty : it->second;
}

std::vector<const Instance*> KnowledgeBase::instances() const {
    std::vector<const Instance*> out;
    out.reserve(instances_.size());
    for (const auto& [_, inst] : instances_) out.push_back(&inst);
    return out;
}

std::optional<Provenance> KnowledgeBase::provenance_of(const Triple& t) const {
    auto it = facts_.find(t);
    if (it == facts_.end()) return std::nullopt;
    return it->second;
}

const std::set<Term>* KnowledgeBase::objects(Predicate p, const std::string& subject) const {
    auto it = sp_index_.find({p, subject});
    return it == sp_index_.end() ? nullptr : &it->second;
}

const std::set<std::string>* KnowledgeBase::subjects(Predicate p, const Term& object) const {
    auto it = po_index_.find({p, object});
    return it == po_index_.end() ? nullptr : &it->second;
}

const std::set<Triple>& KnowledgeBase::with_predicate(Predicate p) const {
    static const std::set<Triple> kEmpty;
    auto it = by_predicate_.find(p);
    return it == by_predicate_.end() ? kEmpty : it->second;
}

std::vector<Fact> KnowledgeBase::match(const FactPattern& pattern) const {
    std::vector<Fact> out;
    auto accept = [&](const Triple& t, const Provenance& prov) {
        if (pattern.subject && t.subject != *pattern.subject) return;
        if (pattern.predicate && t.predicate != *pattern.predicate) return;
        if (pattern.object && t.object != *pattern.object) return;
        out.push_back({t.subject, t.predicate, t.object, prov});
    };
    if (pattern.predicate) {
        for (const auto& t : with_predicate(*pattern.predicate)) accept(t, facts_.at(t));
    } else {
        for (const auto& [t, prov] : facts_) accept(t, prov);
    }
    return out;  // both sources iterate in Triple order
}

void KnowledgeBase::drop_derived() {
    KnowledgeBase kept;
    kept.rules_ = rules_;
    for (const auto& [id, inst] : instances_) {
        if (inst.minted()) continue;
        auto& copy = kept.instances_[id];
        copy.id = id;
        copy.label = inst.label;
        for (const auto& [c, prov] : inst.types) {
            if (!prov.is_asserted()) continue;
            copy.types.emplace(c, prov);
            kept.by_concept_[c].insert(id);
        }
    }
    for (const auto& [t, prov] : facts_) {
        if (!prov.is_asserted()) continue;
        kept.facts_.emplace(t, prov);
        kept.index_fact(t);
    }
    *this = std::move(kept);
}

std::string format_fact(const Fact& f) {
    std::string o = f.object.is_literal() ? "\"" + f.object.value + "\"" : f.object.value;
    return "(" + f.subject + ", " + std::string(to_string(f.predicate)) + ", " + o + ")";
}

}  // namespace cbp
