#include "cbp/process_graph.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "cbp/error.hpp"
#include "cbp/text.hpp"
#include "cbp/xml.hpp"

namespace cbp {

std::string_view to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Task: return "task";
    case NodeKind::MisTask: return "mis-task";
    case NodeKind::Gateway: return "gateway";
    case NodeKind::StartEvent: return "start";
    case NodeKind::EndEvent: return "end";
    }
    return "?";
}

std::string_view to_string(GatewayDirection d) { return d == GatewayDirection::Diverging ? "diverging" : "converging"; }

std::string_view to_string(GatewayType t) {
    switch (t) {
    case GatewayType::Unset: return "unset";
    case GatewayType::Parallel: return "parallel";
    case GatewayType::EventBasedExclusive: return "event-based-exclusive";
    case GatewayType::DataBasedExclusive: return "data-based-exclusive";
    case GatewayType::DataBasedInclusive: return "data-based-inclusive";
    }
    return "?";
}

std::string_view to_string(FlowKind k) { return k == FlowKind::Sequence ? "seqFlow" : "msgFlow"; }

std::optional<GatewayType> parse_gateway_type(std::string_view s) {
    for (auto t : {GatewayType::Parallel, GatewayType::EventBasedExclusive, GatewayType::DataBasedExclusive,
                   GatewayType::DataBasedInclusive})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

std::optional<GatewayDirection> parse_gateway_direction(std::string_view s) {
    if (s == "diverging") return GatewayDirection::Diverging;
    if (s == "converging") return GatewayDirection::Converging;
    return std::nullopt;
}

namespace {

template <class V>
auto find_by_id(V& v, const std::string& id) -> decltype(&v.front()) {
    auto it = std::lower_bound(v.begin(), v.end(), id, [](const auto& e, const std::string& k) { return e.id < k; });
    return it != v.end() && it->id == id ? &*it : nullptr;
}

}  // namespace

const Pool* ProcessGraph::find_pool(const std::string& id) const {
    for (const auto& p : pools)
        if (p.id == id) return &p;
    return nullptr;
}

Pool* ProcessGraph::find_pool(const std::string& id) {
    for (auto& p : pools)
        if (p.id == id) return &p;
    return nullptr;
}

const Node* ProcessGraph::find_node(const std::string& id) const { return find_by_id(nodes, id); }
Node* ProcessGraph::find_node(const std::string& id) { return find_by_id(nodes, id); }
const Flow* ProcessGraph::find_flow(const std::string& id) const { return find_by_id(flows, id); }

std::string flow_id(FlowKind kind, const std::string& source, const std::string& target) {
    return std::string(kind == FlowKind::Sequence ? "seq" : "msg") + "__" + source + "__" + target;
}

Node& ProcessGraph::add_node(Node n) {
    if (n.id.empty()) fail(ErrorCode::ValidationError, "node without id");
    if (find_node(n.id)) fail(ErrorCode::ValidationError, "duplicate node id '" + n.id + "'");
    const Pool* pool = find_pool(n.pool);
    if (!pool) fail(ErrorCode::ValidationError, "node '" + n.id + "' in unknown pool '" + n.pool + "'");
    if (std::none_of(pool->lanes.begin(), pool->lanes.end(), [&](const Lane& l) { return l.id == n.lane; }))
        fail(ErrorCode::ValidationError, "node '" + n.id + "' in unknown lane '" + n.lane + "'");
    auto it = std::lower_bound(nodes.begin(), nodes.end(), n.id, [](const Node& e, const std::string& k) { return e.id < k; });
    return *nodes.insert(it, std::move(n));
}

const Flow& ProcessGraph::add_flow(FlowKind kind, const std::string& source, const std::string& target) {
    if (!find_node(source)) fail(ErrorCode::ValidationError, "flow from unknown node '" + source + "'");
    if (!find_node(target)) fail(ErrorCode::ValidationError, "flow to unknown node '" + target + "'");
    Flow f{flow_id(kind, source, target), kind, source, target};
    auto it = std::lower_bound(flows.begin(), flows.end(), f.id, [](const Flow& e, const std::string& k) { return e.id < k; });
    if (it != flows.end() && it->id == f.id) return *it;
    return *flows.insert(it, std::move(f));
}

bool ProcessGraph::remove_flow(const std::string& id) {
    auto it = std::lower_bound(flows.begin(), flows.end(), id, [](const Flow& e, const std::string& k) { return e.id < k; });
    if (it == flows.end() || it->id != id) return false;
    flows.erase(it);
    return true;
}

void ProcessGraph::remove_node(const std::string& id) {
    std::erase_if(flows, [&](const Flow& f) { return f.source == id || f.target == id; });
    std::erase_if(nodes, [&](const Node& n) { return n.id == id; });
    std::erase_if(annotations, [&](const Annotation& a) { return a.target == id; });
}

std::vector<const Flow*> ProcessGraph::outgoing(const std::string& node, FlowKind kind) const {
    std::vector<const Flow*> out;
    for (const auto& f : flows)
        if (f.kind == kind && f.source == node) out.push_back(&f);
    return out;
}

std::vector<const Flow*> ProcessGraph::incoming(const std::string& node, FlowKind kind) const {
    std::vector<const Flow*> out;
    for (const auto& f : flows)
        if (f.kind == kind && f.target == node) out.push_back(&f);
    return out;
}

std::vector<const Node*> ProcessGraph::nodes_of(NodeKind kind) const {
    std::vector<const Node*> out;
    for (const auto& n : nodes)
        if (n.kind == kind) out.push_back(&n);
    return out;
}

std::vector<const Node*> ProcessGraph::mediation_nodes() const {
    std::vector<const Node*> out;
    for (const auto& n : nodes)
        if (in_mediation(n)) out.push_back(&n);
    return out;
}

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    for (auto& w : split(s, ' '))
        if (!w.empty()) out.push_back(w);
    return out;
}

}  // namespace

std::string graph_to_xml(const ProcessGraph& g) {
    XmlWriter w(true);
    w.declaration();
    w.open("collaborativeProcess", {{"name", g.name}});
    for (const auto& pool : g.pools) {
        XmlAttrs pa{{"id", pool.id}, {"name", pool.name}};
        if (!pool.mediation()) pa.emplace_back("participant", pool.participant);
        w.open(pool.mediation() ? "CIS" : "participants", pa);
        for (const auto& lane : pool.lanes) {
            w.open("role", {{"id", lane.id}, {"name", lane.name}, {"ref", lane.ref}});
            for (const auto& n : g.nodes) {
                if (n.pool != pool.id || n.lane != lane.id) continue;
                switch (n.kind) {
                case NodeKind::Task:
                    w.empty("performsBusinessService", {{"id", n.id},
                                                        {"name", n.name},
                                                        {"ref", n.ref},
                                                        {"inputs", join(n.inputs, " ")},
                                                        {"outputs", join(n.outputs, " ")}});
                    break;
                case NodeKind::MisTask:
                    w.empty("CISservices", {{"id", n.id}, {"name", n.name}, {"ref", n.ref}});
                    break;
                case NodeKind::Gateway:
                    w.empty("gateways", {{"id", n.id},
                                         {"name", n.name},
                                         {"direction", std::string(to_string(n.direction))},
                                         {"type", std::string(to_string(n.gateway_type))}});
                    break;
                case NodeKind::StartEvent:
                case NodeKind::EndEvent:
                    w.empty("events", {{"id", n.id}, {"name", n.name}, {"kind", std::string(to_string(n.kind))}});
                    break;
                }
            }
            w.close();
        }
        w.close();
    }
    for (const auto& f : g.flows)
        w.empty("flows", {{"id", f.id}, {"type", std::string(to_string(f.kind))}, {"source", f.source}, {"target", f.target}});
    for (const auto& a : g.annotations) w.empty("annotation", {{"target", a.target}, {"text", a.text}});
    w.close();
    return w.str();
}

namespace {

std::string need(const XmlNode& n, const char* key) {
    auto v = n.attr(key);
    if (!v) fail(ErrorCode::ParseError, "<" + n.name + "> lacks attribute '" + key + "'");
    return *v;
}

}  // namespace

ProcessGraph graph_from_xml(const std::string& xml) {
    XmlNode root = parse_xml(xml);
    if (root.local_name() != "collaborativeProcess") fail(ErrorCode::ParseError, "root element must be collaborativeProcess");
    ProcessGraph g;
    g.name = root.attr("name").value_or("");
    std::vector<Node> pending;
    for (const auto& el : root.children) {
        auto kind = el.local_name();
        if (kind == "participants" || kind == "CIS") {
            Pool pool{need(el, "id"), need(el, "name"), kind == "CIS" ? "" : need(el, "participant"), {}};
            if (kind == "participants" && pool.participant.empty())
                fail(ErrorCode::ParseError, "participant pool without participant");
            for (const auto* lane_el : el.children_named("role")) {
                Lane lane{need(*lane_el, "id"), need(*lane_el, "name"), lane_el->attr("ref").value_or("")};
                for (const auto& n_el : lane_el->children) {
                    Node n;
                    n.id = need(n_el, "id");
                    n.name = n_el.attr("name").value_or("");
                    n.pool = pool.id;
                    n.lane = lane.id;
                    auto nk = n_el.local_name();
                    if (nk == "performsBusinessService") {
                        n.kind = NodeKind::Task;
                        n.ref = need(n_el, "ref");
                        n.inputs = words(n_el.attr("inputs").value_or(""));
                        n.outputs = words(n_el.attr("outputs").value_or(""));
                    } else if (nk == "CISservices") {
                        n.kind = NodeKind::MisTask;
                        n.ref = need(n_el, "ref");
                    } else if (nk == "gateways") {
                        n.kind = NodeKind::Gateway;
                        auto dir = parse_gateway_direction(need(n_el, "direction"));
                        if (!dir) fail(ErrorCode::ParseError, "bad gateway direction on '" + n.id + "'");
                        n.direction = *dir;
                        auto type = need(n_el, "type");
                        if (type != "unset") {
                            auto t = parse_gateway_type(type);
                            if (!t) fail(ErrorCode::ParseError, "bad gateway type '" + type + "'");
                            n.gateway_type = *t;
                        }
                    } else if (nk == "events") {
                        auto ek = need(n_el, "kind");
                        if (ek == "start")
                            n.kind = NodeKind::StartEvent;
                        else if (ek == "end")
                            n.kind = NodeKind::EndEvent;
                        else
                            fail(ErrorCode::ParseError, "bad event kind '" + ek + "'");
                    } else {
                        fail(ErrorCode::ParseError, "unexpected element <" + n_el.name + "> in role");
                    }
                    pending.push_back(std::move(n));
                }
                pool.lanes.push_back(std::move(lane));
            }
            g.pools.push_back(std::move(pool));
        } else if (kind != "flows" && kind != "annotation") {
            fail(ErrorCode::ParseError, "unexpected element <" + el.name + ">");
        }
    }
    for (auto& n : pending) g.add_node(std::move(n));
    for (const auto& el : root.children) {
        if (el.local_name() == "flows") {
            auto type = need(el, "type");
            FlowKind k;
            if (type == "seqFlow")
                k = FlowKind::Sequence;
            else if (type == "msgFlow")
                k = FlowKind::Message;
            else
                fail(ErrorCode::ParseError, "bad flow type '" + type + "'");
            const auto& f = g.add_flow(k, need(el, "source"), need(el, "target"));
            if (f.id != need(el, "id")) fail(ErrorCode::ParseError, "flow id '" + need(el, "id") + "' does not match its endpoints");
        } else if (el.local_name() == "annotation") {
            g.annotations.push_back({need(el, "target"), need(el, "text")});
        }
    }
    return g;
}

}  // namespace cbp

namespace cbp {

nlohmann::json graph_to_json(const ProcessGraph& g) {
    using nlohmann::json;
    json j;
    j["name"] = g.name;
    j["pools"] = json::array();
    for (const auto& pool : g.pools) {
        json p{{"element", pool.mediation() ? "CIS" : "participants"}, {"id", pool.id}, {"name", pool.name}};
        if (!pool.mediation()) p["participant"] = pool.participant;
        p["roles"] = json::array();
        for (const auto& lane : pool.lanes) {
            json l{{"id", lane.id}, {"name", lane.name}, {"ref", lane.ref}, {"nodes", json::array()}};
            for (const auto& n : g.nodes) {
                if (n.pool != pool.id || n.lane != lane.id) continue;
                json jn{{"id", n.id}, {"name", n.name}};
                switch (n.kind) {
                case NodeKind::Task:
                    jn["element"] = "performsBusinessService";
                    jn["ref"] = n.ref;
                    jn["inputs"] = n.inputs;
                    jn["outputs"] = n.outputs;
                    break;
                case NodeKind::MisTask:
                    jn["element"] = "CISservices";
                    jn["ref"] = n.ref;
                    break;
                case NodeKind::Gateway:
                    jn["element"] = "gateways";
                    jn["direction"] = to_string(n.direction);
                    jn["type"] = to_string(n.gateway_type);
                    break;
                case NodeKind::StartEvent:
                case NodeKind::EndEvent:
                    jn["element"] = "events";
                    jn["kind"] = to_string(n.kind);
                    break;
                }
                l["nodes"].push_back(jn);
            }
            p["roles"].push_back(l);
        }
        j["pools"].push_back(p);
    }
    j["flows"] = json::array();
    for (const auto& f : g.flows)
        j["flows"].push_back({{"id", f.id}, {"type", to_string(f.kind)}, {"source", f.source}, {"target", f.target}});
    j["annotations"] = json::array();
    for (const auto& a : g.annotations) j["annotations"].push_back({{"target", a.target}, {"text", a.text}});
    return j;
}

ProcessGraph graph_from_json(const nlohmann::json& j) {
    try {
        ProcessGraph g;
        g.name = j.value("name", "");
        std::vector<Node> pending;
        for (const auto& p : j.at("pools")) {
            bool cis = p.at("element").get<std::string>() == "CIS";
            Pool pool{p.at("id"), p.at("name"), cis ? "" : p.at("participant").get<std::string>(), {}};
            for (const auto& l : p.at("roles")) {
                Lane lane{l.at("id"), l.at("name"), l.value("ref", "")};
                for (const auto& jn : l.at("nodes")) {
                    Node n;
                    n.id = jn.at("id");
                    n.name = jn.value("name", "");
                    n.pool = pool.id;
                    n.lane = lane.id;
                    auto el = jn.at("element").get<std::string>();
                    if (el == "performsBusinessService") {
                        n.kind = NodeKind::Task;
                        n.ref = jn.at("ref");
                        n.inputs = jn.value("inputs", std::vector<std::string>{});
                        n.outputs = jn.value("outputs", std::vector<std::string>{});
                    } else if (el == "CISservices") {
                        n.kind = NodeKind::MisTask;
                        n.ref = jn.at("ref");
                    } else if (el == "gateways") {
                        n.kind = NodeKind::Gateway;
                        auto dir = parse_gateway_direction(jn.at("direction").get<std::string>());
                        if (!dir) fail(ErrorCode::ParseError, "bad gateway direction on '" + n.id + "'");
                        n.direction = *dir;
                        auto type = jn.at("type").get<std::string>();
                        if (type != "unset") {
                            auto t = parse_gateway_type(type);
                            if (!t) fail(ErrorCode::ParseError, "bad gateway type '" + type + "'");
                            n.gateway_type = *t;
                        }
                    } else if (el == "events") {
                        n.kind = jn.at("kind").get<std::string>() == "start" ? NodeKind::StartEvent : NodeKind::EndEvent;
                    } else {
                        fail(ErrorCode::ParseError, "unknown node element '" + el + "'");
                    }
                    pending.push_back(std::move(n));
                }
                pool.lanes.push_back(std::move(lane));
            }
            g.pools.push_back(std::move(pool));
        }
        for (auto& n : pending) g.add_node(std::move(n));
        for (const auto& f : j.at("flows")) {
            auto type = f.at("type").get<std::string>();
            if (type != "seqFlow" && type != "msgFlow") fail(ErrorCode::ParseError, "bad flow type '" + type + "'");
            g.add_flow(type == "seqFlow" ? FlowKind::Sequence : FlowKind::Message, f.at("source"), f.at("target"));
        }
        for (const auto& a : j.value("annotations", nlohmann::json::array())) g.annotations.push_back({a.at("target"), a.at("text")});
        return g;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("process graph json: ") + e.what());
    }
}

}  // namespace cbp
