#include "cbp/vocabulary.hpp"

#include <algorithm>

namespace cbp {

namespace {

constexpr std::array<std::pair<Concept, std::string_view>, kConceptCount> kConceptNames{{
    {Concept::CollaborativeNetwork, "CollaborativeNetwork"},
    {Concept::Participant, "Participant"},
    {Concept::Role, "Role"},
    {Concept::AbstractService, "AbstractService"},
    {Concept::BusinessService, "BusinessService"},
    {Concept::Resource, "Resource"},
    {Concept::CoordinationService, "CoordinationService"},
    {Concept::MISService, "MISService"},
    {Concept::CommonGoal, "CommonGoal"},
    {Concept::Relationship, "Relationship"},
    {Concept::Topology, "Topology"},
    {Concept::DependencyBetweenBusinessServices, "DependencyBetweenBusinessServices"},
    {Concept::DependencyBetweenMISServices, "DependencyBetweenMISServices"},
}};

constexpr std::array<std::pair<Predicate, std::string_view>, kPredicateCount> kPredicateNames{{
    {Predicate::playRole, "playRole"},
    {Predicate::performAService, "performAService"},
    {Predicate::provideAService, "provideAService"},
    {Predicate::hasBusinessService, "hasBusinessService"},
    {Predicate::provideBusinessService, "provideBusinessService"},
    {Predicate::hasInput, "hasInput"},
    {Predicate::hasOutput, "hasOutput"},
    {Predicate::hasRelationship, "hasRelationship"},
    {Predicate::P1, "P1"},
    {Predicate::P2, "P2"},
    {Predicate::manipulateResource, "manipulateResource"},
    {Predicate::fromBusinessService, "fromBusinessService"},
    {Predicate::toBusinessService, "toBusinessService"},
    {Predicate::containResource, "containResource"},
    {Predicate::isCoordinatedBy, "isCoordinatedBy"},
    {Predicate::hasMISservice, "hasMISservice"},
    {Predicate::achievesAService, "achievesAService"},
    {Predicate::description, "description"},
    {Predicate::name, "name"},
    {Predicate::hasPower, "hasPower"},
    {Predicate::hasDuration, "hasDuration"},
    {Predicate::hasType, "hasType"},
    {Predicate::hasCommonGoal, "hasCommonGoal"},
    {Predicate::hasTopology, "hasTopology"},
    {Predicate::fromDependency, "fromDependency"},
    {Predicate::toDependency, "toDependency"},
}};

using C = Concept;
using P = Predicate;

PredicateSignature inst(P p, std::vector<C> dom, std::vector<C> rng) {
    return {p, std::move(dom), RangeKind::Instance, std::move(rng), {}};
}
PredicateSignature lit(P p, std::vector<C> dom) {
    return {p, std::move(dom), RangeKind::Literal, {}, {}};
}
PredicateSignature enm(P p, std::vector<C> dom, std::vector<EnumGroup> groups) {
    return {p, std::move(dom), RangeKind::Enum, {}, std::move(groups)};
}

const std::vector<PredicateSignature>& signatures() {
    static const std::vector<PredicateSignature> table = [] {
        std::vector<PredicateSignature> t{
            inst(P::playRole, {C::Participant}, {C::Role}),
            inst(P::performAService, {C::Role}, {C::AbstractService}),
            inst(P::provideAService, {C::Participant}, {C::AbstractService}),
            inst(P::hasBusinessService, {C::AbstractService}, {C::BusinessService}),
            inst(P::provideBusinessService, {C::Participant}, {C::BusinessService}),
            inst(P::hasInput, {C::BusinessService}, {C::Resource}),
            inst(P::hasOutput, {C::BusinessService}, {C::Resource}),
            inst(P::hasRelationship, {C::CollaborativeNetwork}, {C::Relationship}),
            inst(P::P1, {C::Relationship}, {C::Participant}),
            inst(P::P2, {C::Relationship}, {C::Participant}),
            inst(P::manipulateResource, {C::CoordinationService}, {C::Resource}),
            inst(P::fromBusinessService, {C::DependencyBetweenBusinessServices}, {C::BusinessService}),
            inst(P::toBusinessService, {C::DependencyBetweenBusinessServices}, {C::BusinessService}),
            inst(P::containResource,
                 {C::DependencyBetweenBusinessServices, C::DependencyBetweenMISServices}, {C::Resource}),
            inst(P::isCoordinatedBy, {C::DependencyBetweenBusinessServices}, {C::CoordinationService}),
            inst(P::hasMISservice, {C::CollaborativeNetwork}, {C::MISService}),
            inst(P::achievesAService, {C::CommonGoal}, {C::AbstractService}),
            lit(P::description, {C::CommonGoal}),
            lit(P::name, {}),
            enm(P::hasPower, {C::Topology}, {EnumGroup::Power}),
            enm(P::hasDuration, {C::Topology, C::Relationship}, {EnumGroup::Duration}),
            enm(P::hasType, {C::Topology, C::Relationship},
                {EnumGroup::TopologyType, EnumGroup::RelationshipType}),
            inst(P::hasCommonGoal, {C::CollaborativeNetwork}, {C::CommonGoal}),
            inst(P::hasTopology, {C::CollaborativeNetwork}, {C::Topology}),
            inst(P::fromDependency, {C::DependencyBetweenMISServices}, {C::DependencyBetweenBusinessServices}),
            inst(P::toDependency, {C::DependencyBetweenMISServices}, {C::DependencyBetweenBusinessServices}),
        };
        std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
            return static_cast<int>(a.predicate) < static_cast<int>(b.predicate);
        });
        return t;
    }();
    return table;
}

constexpr std::array<Concept, kConceptCount> kAllConcepts = [] {
    std::array<Concept, kConceptCount> a{};
    for (std::size_t i = 0; i < kConceptCount; ++i) a[i] = kConceptNames[i].first;
    return a;
}();

constexpr std::array<Predicate, kPredicateCount> kAllPredicates = [] {
    std::array<Predicate, kPredicateCount> a{};
    for (std::size_t i = 0; i < kPredicateCount; ++i) a[i] = kPredicateNames[i].first;
    return a;
}();

}  // namespace

std::string_view to_string(Concept c) { return kConceptNames[static_cast<std::size_t>(c)].second; }

std::string_view to_string(Predicate p) { return kPredicateNames[static_cast<std::size_t>(p)].second; }

std::string_view to_string(EnumGroup g) {
    switch (g) {
    case EnumGroup::Power: return "Power";
    case EnumGroup::Duration: return "Duration";
    case EnumGroup::TopologyType: return "TopologyType";
    case EnumGroup::RelationshipType: return "RelationshipType";
    }
    return "?";
}

std::optional<Concept> parse_concept(std::string_view name) {
    for (const auto& [c, n] : kConceptNames)
        if (n == name) return c;
    return std::nullopt;
}

std::optional<Predicate> parse_predicate(std::string_view name) {
    for (const auto& [p, n] : kPredicateNames)
        if (n == name) return p;
    return std::nullopt;
}

std::optional<EnumIndividual> find_enum_individual(std::string_view id) {
    if (id == "hierarchic") id = "hierarchical";
    for (const auto& e : kEnumIndividuals)
        if (e.id == id) return e;
    return std::nullopt;
}

const PredicateSignature& signature(Predicate p) { return signatures()[static_cast<std::size_t>(p)]; }

std::span<const Concept> all_concepts() { return kAllConcepts; }
std::span<const Predicate> all_predicates() { return kAllPredicates; }

}  // namespace cbp
