#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cbp/knowledge_base.hpp"

namespace cbp {

// Process-knowledge repository: the generic roles, services and resources
// that network descriptions are linked against.
struct SeedRepository {
    struct AbstractService {
        std::string name;
        std::vector<std::string> business_services;
    };
    struct BusinessService {
        std::string name;
        std::vector<std::string> inputs;
        std::vector<std::string> outputs;
    };
    struct Role {
        std::string name;
        std::vector<std::string> abstract_services;
    };
    struct CoordinationService {
        std::string name;
        std::vector<std::string> resources;
    };

    std::vector<Role> roles;
    std::vector<AbstractService> abstract_services;
    std::vector<BusinessService> business_services;
    std::vector<std::string> resources;
    std::vector<CoordinationService> coordination_services;

    std::size_t record_count() const {
        return roles.size() + abstract_services.size() + business_services.size() + resources.size() +
               coordination_services.size();
    }
};

// Sectioned text format, one record per line, '#' comments:
//
//   [resources]
//   purchase order
//   [business-services]
//   obtain order; in: purchase order; out: accepted order
//   [abstract-services]
//   sell product: obtain order, transfer invoice
//   [roles]
//   seller: sell product
//   [coordination-services]
//   manage flow of document: purchase order, invoice
//
// Throws ParseError on syntax problems and BrokenReference when a record
// names something undeclared.
SeedRepository parse_seed(std::istream& in);
SeedRepository parse_seed_string(const std::string& text);

// Asserts every seed record as an instance (id = slug of its name) with a
// name literal and its linking facts, all Asserted.
KnowledgeBase seed_to_kb(const SeedRepository& seed);

KnowledgeBase load_seed(const std::string& path);

}  // namespace cbp
