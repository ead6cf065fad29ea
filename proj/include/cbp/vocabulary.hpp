#pragma once

// Closed collaboration / collaborative-process vocabulary. Every kind,
// predicate and enumerated individual the engine knows about is declared
// here; names outside these tables are rejected at load time.

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cbp {

enum class Concept {
    CollaborativeNetwork,
    Participant,
    Role,
    AbstractService,
    BusinessService,
    Resource,
    CoordinationService,
    MISService,
    CommonGoal,
    Relationship,
    Topology,
    DependencyBetweenBusinessServices,
    DependencyBetweenMISServices,
};

inline constexpr std::size_t kConceptCount = 13;

enum class Predicate {
    playRole,
    performAService,
    provideAService,
    hasBusinessService,
    provideBusinessService,
    hasInput,
    hasOutput,
    hasRelationship,
    P1,
    P2,
    manipulateResource,
    fromBusinessService,
    toBusinessService,
    containResource,
    isCoordinatedBy,
    hasMISservice,
    achievesAService,
    description,
    name,
    hasPower,
    hasDuration,
    hasType,
    hasCommonGoal,
    hasTopology,
    fromDependency,
    toDependency,
};

inline constexpr std::size_t kPredicateCount = 26;

// Groups of the pre-declared enumerated individuals.
enum class EnumGroup { Power, Duration, TopologyType, RelationshipType };

struct EnumIndividual {
    std::string_view id;
    EnumGroup group;
};

inline constexpr std::array<EnumIndividual, 11> kEnumIndividuals{{
    {"central", EnumGroup::Power},
    {"equal", EnumGroup::Power},
    {"hierarchical", EnumGroup::Power},
    {"continuous", EnumGroup::Duration},
    {"discontinuous", EnumGroup::Duration},
    {"star", EnumGroup::TopologyType},
    {"P2P", EnumGroup::TopologyType},
    {"chain", EnumGroup::TopologyType},
    {"competition", EnumGroup::RelationshipType},
    {"supplier-customer", EnumGroup::RelationshipType},
    {"group-of-interest", EnumGroup::RelationshipType},
}};

// What the object position of a predicate may hold.
enum class RangeKind { Instance, Literal, Enum };

struct PredicateSignature {
    Predicate predicate;
    std::vector<Concept> domain;      // empty: any concept
    RangeKind range_kind;
    std::vector<Concept> range;       // RangeKind::Instance
    std::vector<EnumGroup> enum_range;  // RangeKind::Enum
};

std::string_view to_string(Concept c);
std::string_view to_string(Predicate p);
std::string_view to_string(EnumGroup g);

std::optional<Concept> parse_concept(std::string_view name);
std::optional<Predicate> parse_predicate(std::string_view name);

// Accepts "hierarchic" as an alias of "hierarchical".
std::optional<EnumIndividual> find_enum_individual(std::string_view id);

const PredicateSignature& signature(Predicate p);

std::span<const Concept> all_concepts();
std::span<const Predicate> all_predicates();

}  // namespace cbp
