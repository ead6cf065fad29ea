#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cbp {

enum class NodeKind { Task, MisTask, Gateway, StartEvent, EndEvent };
enum class GatewayDirection { Diverging, Converging };
enum class GatewayType { Unset, Parallel, EventBasedExclusive, DataBasedExclusive, DataBasedInclusive };
enum class FlowKind { Sequence, Message };

std::string_view to_string(NodeKind k);
std::string_view to_string(GatewayDirection d);
std::string_view to_string(GatewayType t);
std::string_view to_string(FlowKind k);

// Accepts the four supported types by name ("parallel",
// "event-based-exclusive", "data-based-exclusive", "data-based-inclusive").
std::optional<GatewayType> parse_gateway_type(std::string_view s);
std::optional<GatewayDirection> parse_gateway_direction(std::string_view s);

struct Lane {
    std::string id;
    std::string name;
    std::string ref;  // role id, or coordination-service id in the mediation pool
    bool operator==(const Lane&) const = default;
};

struct Pool {
    std::string id;
    std::string name;
    std::string participant;  // empty for the mediation pool
    std::vector<Lane> lanes;

    bool mediation() const { return participant.empty(); }
    bool operator==(const Pool&) const = default;
};

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Task;
    std::string name;
    std::string pool;
    std::string lane;
    std::string ref;  // business service (Task) or dependency (MisTask) id
    std::vector<std::string> inputs;   // resource ids, tasks only
    std::vector<std::string> outputs;  // resource ids, tasks only
    GatewayDirection direction = GatewayDirection::Diverging;  // gateways only
    GatewayType gateway_type = GatewayType::Unset;             // gateways only

    bool operator==(const Node&) const = default;
};

struct Flow {
    std::string id;
    FlowKind kind = FlowKind::Sequence;
    std::string source;
    std::string target;
    bool operator==(const Flow&) const = default;
};

struct Annotation {
    std::string target;  // node id
    std::string text;
    bool operator==(const Annotation&) const = default;
};

inline constexpr const char* kMediationPoolId = "pool__cis";
inline constexpr const char* kStartEventId = "event_start";
inline constexpr const char* kEndEventId = "event_end";

// Partner pools plus one mediation pool. Nodes, flows and annotations are
// kept sorted by id so equal graphs serialize identically.
struct ProcessGraph {
    std::string name;
    std::vector<Pool> pools;
    std::vector<Node> nodes;
    std::vector<Flow> flows;
    std::vector<Annotation> annotations;

    const Pool* find_pool(const std::string& id) const;
    Pool* find_pool(const std::string& id);
    const Node* find_node(const std::string& id) const;
    Node* find_node(const std::string& id);
    const Flow* find_flow(const std::string& id) const;

    // add_node/add_flow keep the vectors sorted and reject duplicate ids
    // or dangling endpoints with ValidationError.
    Node& add_node(Node n);
    const Flow& add_flow(FlowKind kind, const std::string& source, const std::string& target);
    bool remove_flow(const std::string& id);
    void remove_node(const std::string& id);  // and its flows

    std::vector<const Flow*> outgoing(const std::string& node, FlowKind kind) const;
    std::vector<const Flow*> incoming(const std::string& node, FlowKind kind) const;
    std::vector<const Node*> nodes_of(NodeKind kind) const;
    std::vector<const Node*> mediation_nodes() const;
    bool in_mediation(const Node& n) const { return n.pool == kMediationPoolId; }

    bool operator==(const ProcessGraph&) const = default;
};

std::string flow_id(FlowKind kind, const std::string& source, const std::string& target);

// Project-internal document: participants / CIS pools with role lanes
// holding performsBusinessService, CISservices, gateways and events, then
// flows typed seqFlow / msgFlow.
std::string graph_to_xml(const ProcessGraph& g);
// Throws ParseError / ValidationError.
ProcessGraph graph_from_xml(const std::string& xml);

// Same structure as the XML document, element for key.
nlohmann::json graph_to_json(const ProcessGraph& g);
ProcessGraph graph_from_json(const nlohmann::json& j);

}  // namespace cbp
