#pragma once

#include <map>
#include <string>
#include <string_view>

#include "cbp/diagnostics.hpp"
#include "cbp/knowledge_base.hpp"
#include "cbp/process_graph.hpp"

namespace cbp {

// Builds pools, lanes, tasks, one MIS occurrence per dependency and the
// message/sequence flows between them from a deduced KB. Throws
// NoDependencies when the KB holds no dependency between business services.
ProcessGraph assemble(const KnowledgeBase& kb);

// Rewires every non-gateway mediation node with sequence out-degree > 1
// through a diverging gateway and in-degree > 1 through a converging one.
// When several mediation nodes have no successor and no end event exists
// yet, they are joined by one converging gateway. New gateways are untyped.
ProcessGraph insert_gateways(ProcessGraph g);

struct EventOptions {
    // Any task without an incoming message flow starts the process. Off:
    // such a task must also have no input produced by another task.
    bool literal_start_rule = false;
};

// (Re)creates the single start and end events of the mediation pool.
// Idempotent; types of regenerated gateways are kept.
ProcessGraph generate_events(ProcessGraph g, const EventOptions& options = {});

using GatewayAssignment = std::map<std::string, GatewayType>;

// Throws UnknownGateway, or UnsupportedType for any name outside the four
// supported types.
ProcessGraph assign_gateway_type(ProcessGraph g, const std::string& gateway_id, std::string_view type);
ProcessGraph assign_gateway_type(ProcessGraph g, const std::string& gateway_id, GatewayType type);
ProcessGraph apply_assignments(ProcessGraph g, const GatewayAssignment& assignments);
ProcessGraph fill_unset_gateways(ProcessGraph g, GatewayType type);
GatewayAssignment gateway_assignments(const ProcessGraph& g);  // typed gateways only

// Empty iff every gateway is typed and exactly one start and one end event
// exist with every mediation node on a start-to-end path.
Diagnostics completeness_check(const ProcessGraph& g);

// assemble + insert_gateways + generate_events.
ProcessGraph build_process(const KnowledgeBase& kb, const EventOptions& options = {});

}  // namespace cbp
