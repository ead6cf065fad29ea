#include "cbp/ruleset.hpp"

namespace cbp {

namespace {

using C = Concept;
using P = Predicate;

Atom is(C c, RuleTerm t) { return ConceptAtom{c, std::move(t)}; }
Atom rel(P p, RuleTerm s, RuleTerm o) { return PropertyAtom{p, std::move(s), std::move(o)}; }

Rule dependency_rule(std::string id, P source_side, P target_side) {
    Rule r;
    r.id = std::move(id);
    r.body = {
        is(C::CollaborativeNetwork, var("a")),
        rel(P::hasRelationship, var("a"), var("z")),
        rel(source_side, var("z"), var("y")),
        rel(P::provideBusinessService, var("y"), var("c")),
        rel(P::hasOutput, var("c"), var("d")),
        rel(target_side, var("z"), var("x")),
        rel(P::provideBusinessService, var("x"), var("b")),
        rel(P::hasInput, var("b"), var("d")),
        is(C::CoordinationService, var("f")),
        rel(P::manipulateResource, var("f"), var("d")),
    };
    r.head = {
        is(C::DependencyBetweenBusinessServices, var("e")),
        is(C::MISService, var("f")),
        rel(P::fromBusinessService, var("e"), var("c")),
        rel(P::toBusinessService, var("e"), var("b")),
        rel(P::containResource, var("e"), var("d")),
        rel(P::isCoordinatedBy, var("e"), var("f")),
        rel(P::hasMISservice, var("a"), var("f")),
    };
    r.skolems = {{"e", {"dep", {"c", "b", "d"}}}};
    return r;
}

Rule topology_rule(std::string id, const char* power, const char* duration, const char* type) {
    Rule r;
    r.id = std::move(id);
    r.body = {
        is(C::Topology, var("x")),
        rel(P::hasPower, var("x"), constant(power)),
        rel(P::hasDuration, var("x"), constant(duration)),
    };
    r.head = {rel(P::hasType, var("x"), constant(type))};
    return r;
}

std::vector<Rule> make_rules() {
    std::vector<Rule> rules;

    Rule gr1a;
    gr1a.id = "GR1a";
    gr1a.body = {is(C::Participant, var("x")), rel(P::playRole, var("x"), var("y")),
                 rel(P::performAService, var("y"), var("z"))};
    gr1a.head = {rel(P::provideAService, var("x"), var("z"))};
    rules.push_back(gr1a);

    Rule gr1b;
    gr1b.id = "GR1b";
    gr1b.body = {is(C::Participant, var("x")), rel(P::provideAService, var("x"), var("z")),
                 rel(P::performAService, var("y"), var("z"))};
    gr1b.head = {rel(P::playRole, var("x"), var("y"))};
    rules.push_back(gr1b);

    Rule gr2;
    gr2.id = "GR2";
    gr2.body = {is(C::Participant, var("x")), rel(P::provideAService, var("x"), var("y")),
                rel(P::hasBusinessService, var("y"), var("a"))};
    gr2.head = {rel(P::provideBusinessService, var("x"), var("a"))};
    rules.push_back(gr2);

    rules.push_back(dependency_rule("GR3a", P::P1, P::P2));
    rules.push_back(dependency_rule("GR3b", P::P2, P::P1));

    // e1 delivers to b; b's participant also runs b2, the source of e2; b
    // produces something b2 consumes. The MIS occurrence of e1 precedes e2's.
    Rule seq;
    seq.id = "GR3seq";
    seq.body = {
        is(C::DependencyBetweenBusinessServices, var("e1")),
        rel(P::toBusinessService, var("e1"), var("b")),
        rel(P::isCoordinatedBy, var("e1"), var("f1")),
        rel(P::provideBusinessService, var("p"), var("b")),
        rel(P::hasOutput, var("b"), var("r")),
        rel(P::hasInput, var("b2"), var("r")),
        rel(P::provideBusinessService, var("p"), var("b2")),
        rel(P::fromBusinessService, var("e2"), var("b2")),
        is(C::DependencyBetweenBusinessServices, var("e2")),
        rel(P::isCoordinatedBy, var("e2"), var("f2")),
    };
    seq.head = {
        is(C::DependencyBetweenMISServices, var("s")),
        rel(P::fromDependency, var("s"), var("e1")),
        rel(P::toDependency, var("s"), var("e2")),
        rel(P::containResource, var("s"), var("r")),
    };
    seq.skolems = {{"s", {"seq", {"e1", "e2"}}}};
    rules.push_back(seq);

    Rule gr4;
    gr4.id = "GR4";
    gr4.body = {
        is(C::CommonGoal, var("x")),
        rel(P::description, var("x"), var("a")),
        BuiltinAtom{Builtin::SubstringBefore, {var("y"), var("a"), literal(" ")}},
        is(C::AbstractService, var("b")),
        rel(P::name, var("b"), var("c")),
        BuiltinAtom{Builtin::ContainsIgnoreCase, {var("c"), var("y")}},
    };
    gr4.head = {rel(P::achievesAService, var("x"), var("b"))};
    rules.push_back(gr4);

    rules.push_back(topology_rule("GR5a", "central", "continuous", "star"));
    rules.push_back(topology_rule("GR5b", "equal", "discontinuous", "P2P"));
    rules.push_back(topology_rule("GR5c", "hierarchical", "continuous", "chain"));
    return rules;
}

}  // namespace

const std::vector<Rule>& builtin_ruleset() {
    static const std::vector<Rule> rules = [] {
        auto r = make_rules();
        for (const auto& rule : r) validate_rule(rule);
        return r;
    }();
    return rules;
}

}  // namespace cbp
