#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cbp/diagnostics.hpp"
#include "cbp/process_graph.hpp"

namespace cbp {

inline constexpr const char* kBpmnNamespace = "http://www.omg.org/spec/BPMN/20100524/MODEL";

enum class BpmnElement {
    Task,
    ParallelGateway,
    ExclusiveGateway,
    EventBasedGateway,
    InclusiveGateway,
    StartEvent,
    EndEvent,
};

std::string_view element_name(BpmnElement e);  // "task", "parallelGateway", ...
bool is_gateway(BpmnElement e);
bool is_event(BpmnElement e);

struct BpmnNode {
    std::string id;
    std::string name;
    BpmnElement element = BpmnElement::Task;
    std::string direction;  // "Diverging" / "Converging" on gateways, else empty
    std::string process;
    std::string lane;
    bool operator==(const BpmnNode&) const = default;
};

struct BpmnLane {
    std::string id;
    std::string name;
    std::vector<std::string> node_refs;  // sorted
    bool operator==(const BpmnLane&) const = default;
};

struct BpmnPool {
    std::string id;  // collaboration participant id
    std::string name;
    std::string process_id;
    std::vector<BpmnLane> lanes;
    bool operator==(const BpmnPool&) const = default;
};

struct BpmnEdge {
    std::string id;
    std::string source;
    std::string target;
    std::string process;  // owning process for sequence edges, empty for message edges
    bool operator==(const BpmnEdge&) const = default;
};

struct BpmnDocument {
    std::string id;
    std::string name;
    std::vector<BpmnPool> pools;     // by id
    std::vector<BpmnNode> nodes;     // by process, then id
    std::vector<BpmnEdge> sequence;  // by process, then id
    std::vector<BpmnEdge> messages;  // by id
    bool operator==(const BpmnDocument&) const = default;
};

struct BpmnCounts {
    std::size_t pools = 0, lanes = 0, tasks = 0, gateways = 0, events = 0, sequence_edges = 0, message_edges = 0;
    bool operator==(const BpmnCounts&) const = default;
};

BpmnCounts count(const BpmnDocument& doc);

// Process-graph element -> BPMN element, one row per graph vocabulary term.
const std::vector<std::pair<std::string, std::string>>& element_mapping();

// Throws IncompleteProcess unless completeness_check(g) is empty.
BpmnDocument export_bpmn(const ProcessGraph& g);

// Two-space indented, or canonical single-line. Same document, same bytes.
std::string serialize_bpmn(const BpmnDocument& doc, bool pretty = true);

// Throws ParseError on anything serialize_bpmn would not produce.
BpmnDocument parse_bpmn(const std::string& xml);

// Empty iff the text is well-formed, conforms to the shipped schema subset
// and every reference resolves with flows on the right side of pool borders.
Diagnostics validate_bpmn(const std::string& xml);

}  // namespace cbp
