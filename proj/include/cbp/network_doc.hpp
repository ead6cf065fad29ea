#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cbp {

// User-authored description of a collaboration space.
struct CollaborativeNetworkDoc {
    struct Participant {
        std::string name;
        std::vector<std::string> roles;
        std::vector<std::string> abstract_services;  // optional, supplements deduction
        bool operator==(const Participant&) const = default;
    };
    struct Relationship {
        std::string type;  // competition | supplier-customer | group-of-interest
        std::string p1;
        std::string p2;
        std::string duration;  // continuous | discontinuous
        bool operator==(const Relationship&) const = default;
    };
    struct Topology {
        std::string power;     // central | equal | hierarchical
        std::string duration;  // continuous | discontinuous
        bool operator==(const Topology&) const = default;
    };
    struct Goal {
        std::string description;
        bool operator==(const Goal&) const = default;
    };

    std::string name;
    std::vector<Participant> participants;
    std::vector<Relationship> relationships;
    std::optional<Topology> topology;
    std::vector<Goal> goals;

    bool operator==(const CollaborativeNetworkDoc&) const = default;
};

// XML encoding: root element `network` (any prefix) whose children use the
// element names participants / role / abstractService / relationship /
// topology / commonGoals. Throws ParseError.
CollaborativeNetworkDoc parse_network_xml(const std::string& text);
std::string network_to_xml(const CollaborativeNetworkDoc& doc);

// JSON encoding with the same content. Throws ParseError.
CollaborativeNetworkDoc parse_network_json(const std::string& text);
nlohmann::json network_to_json(const CollaborativeNetworkDoc& doc);
CollaborativeNetworkDoc network_from_json(const nlohmann::json& j);

// Sniffs the first non-blank character: '{' is JSON, anything else XML.
CollaborativeNetworkDoc parse_network(const std::string& text);
CollaborativeNetworkDoc load_network(const std::string& path);

}  // namespace cbp
