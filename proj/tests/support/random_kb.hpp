#pragma once

// Random well-typed KBs over the collaboration vocabulary: a fixed pool of
// typed instances and up to `max_facts` facts drawn from the domain/range
// table, biased toward the shapes the built-in rules join on.

#include <random>
#include <string>
#include <vector>

#include "cbp/knowledge_base.hpp"
#include "cbp/vocabulary.hpp"

namespace oracle {

inline cbp::KnowledgeBase random_kb(std::mt19937& rng, std::size_t max_facts = 30) {
    using cbp::Concept;
    using cbp::Predicate;
    cbp::KnowledgeBase kb;
    auto pick = [&](const std::vector<std::string>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

    const std::vector<std::string> participants{"P0", "P1", "P2"}, roles{"R0", "R1"}, abstract{"AS0", "AS1", "AS2"},
        business{"BS0", "BS1", "BS2", "BS3"}, resources{"D0", "D1", "D2"}, coordination{"C0", "C1"}, networks{"N0"},
        relationships{"Rel0", "Rel1"}, topologies{"T0"}, goals{"G0"};
    const std::vector<std::string> service_names{"buy", "buy over internet", "sell product", "Buy in a store", "ship"};
    const std::vector<std::string> goal_texts{"buy 100 bolts", "sell", "ship goods", " spaced", "BUY now"};

    auto declare = [&](const std::vector<std::string>& ids, Concept c) {
        for (const auto& id : ids) kb.add_instance(id, id, {c});
    };
    declare(participants, Concept::Participant);
    declare(roles, Concept::Role);
    declare(abstract, Concept::AbstractService);
    declare(business, Concept::BusinessService);
    declare(resources, Concept::Resource);
    declare(coordination, Concept::CoordinationService);
    declare(networks, Concept::CollaborativeNetwork);
    declare(relationships, Concept::Relationship);
    declare(topologies, Concept::Topology);
    declare(goals, Concept::CommonGoal);

    auto id = [](const std::string& s) { return cbp::Term::id(s); };
    auto lit = [](const std::string& s) { return cbp::Term::literal(s); };
    std::vector<cbp::Fact> candidates;
    auto add = [&](const std::string& s, Predicate p, cbp::Term o) { candidates.push_back({s, p, std::move(o), {}}); };

    std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_facts)(rng);
    for (std::size_t k = 0; k < n; ++k) {
        switch (std::uniform_int_distribution<int>(0, 17)(rng)) {
        case 0: add(pick(participants), Predicate::playRole, id(pick(roles))); break;
        case 1: add(pick(roles), Predicate::performAService, id(pick(abstract))); break;
        case 2: add(pick(participants), Predicate::provideAService, id(pick(abstract))); break;
        case 3: add(pick(abstract), Predicate::hasBusinessService, id(pick(business))); break;
        case 4: add(pick(business), Predicate::hasInput, id(pick(resources))); break;
        case 5: add(pick(business), Predicate::hasOutput, id(pick(resources))); break;
        case 6: add(pick(networks), Predicate::hasRelationship, id(pick(relationships))); break;
        case 7: add(pick(relationships), Predicate::P1, id(pick(participants))); break;
        case 8: add(pick(relationships), Predicate::P2, id(pick(participants))); break;
        case 9: add(pick(coordination), Predicate::manipulateResource, id(pick(resources))); break;
        case 10: add(pick(abstract), Predicate::name, lit(pick(service_names))); break;
        case 11: add(pick(goals), Predicate::description, lit(pick(goal_texts))); break;
        case 12: add(pick(topologies), Predicate::hasPower, id(pick({"central", "equal", "hierarchical"}))); break;
        case 13: add(pick(topologies), Predicate::hasDuration, id(pick({"continuous", "discontinuous"}))); break;
        case 14: add(pick(participants), Predicate::provideBusinessService, id(pick(business))); break;
        case 15: add(pick(networks), Predicate::hasTopology, id(pick(topologies))); break;
        case 16: add(pick(networks), Predicate::hasCommonGoal, id(pick(goals))); break;
        default: add(pick(relationships), Predicate::hasType, id(coin(0.5) ? "supplier-customer" : "competition")); break;
        }
    }
    for (const auto& f : candidates) kb.assert_fact(f);
    return kb;
}

}  // namespace oracle
