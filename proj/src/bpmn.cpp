#include "cbp/bpmn.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "cbp/assembler.hpp"
#include "cbp/error.hpp"
#include "cbp/xml.hpp"

namespace cbp {

std::string_view element_name(BpmnElement e) {
    switch (e) {
    case BpmnElement::Task: return "task";
    case BpmnElement::ParallelGateway: return "parallelGateway";
    case BpmnElement::ExclusiveGateway: return "exclusiveGateway";
    case BpmnElement::EventBasedGateway: return "eventBasedGateway";
    case BpmnElement::InclusiveGateway: return "inclusiveGateway";
    case BpmnElement::StartEvent: return "startEvent";
    case BpmnElement::EndEvent: return "endEvent";
    }
    return "?";
}

bool is_gateway(BpmnElement e) {
    return e == BpmnElement::ParallelGateway || e == BpmnElement::ExclusiveGateway ||
           e == BpmnElement::EventBasedGateway || e == BpmnElement::InclusiveGateway;
}

bool is_event(BpmnElement e) { return e == BpmnElement::StartEvent || e == BpmnElement::EndEvent; }

namespace {

constexpr BpmnElement kAllElements[] = {BpmnElement::Task,
                                        BpmnElement::ParallelGateway,
                                        BpmnElement::ExclusiveGateway,
                                        BpmnElement::EventBasedGateway,
                                        BpmnElement::InclusiveGateway,
                                        BpmnElement::StartEvent,
                                        BpmnElement::EndEvent};

std::optional<BpmnElement> parse_element(std::string_view s) {
    for (auto e : kAllElements)
        if (element_name(e) == s) return e;
    return std::nullopt;
}

std::string process_for(const std::string& pool_id) {
    const std::string prefix = "pool__";
    return "process__" + (pool_id.rfind(prefix, 0) == 0 ? pool_id.substr(prefix.size()) : pool_id);
}

BpmnElement element_for(const Node& n) {
    switch (n.kind) {
    case NodeKind::Task:
    case NodeKind::MisTask: return BpmnElement::Task;
    case NodeKind::StartEvent: return BpmnElement::StartEvent;
    case NodeKind::EndEvent: return BpmnElement::EndEvent;
    case NodeKind::Gateway: break;
    }
    switch (n.gateway_type) {
    case GatewayType::Parallel: return BpmnElement::ParallelGateway;
    case GatewayType::EventBasedExclusive: return BpmnElement::EventBasedGateway;
    case GatewayType::DataBasedExclusive: return BpmnElement::ExclusiveGateway;
    case GatewayType::DataBasedInclusive: return BpmnElement::InclusiveGateway;
    case GatewayType::Unset: break;
    }
    fail(ErrorCode::IncompleteProcess, "gateway '" + n.id + "' has no type");
}

}  // namespace

BpmnCounts count(const BpmnDocument& doc) {
    BpmnCounts c;
    c.pools = doc.pools.size();
    for (const auto& p : doc.pools) c.lanes += p.lanes.size();
    for (const auto& n : doc.nodes) {
        if (n.element == BpmnElement::Task) ++c.tasks;
        else if (is_gateway(n.element)) ++c.gateways;
        else ++c.events;
    }
    c.sequence_edges = doc.sequence.size();
    c.message_edges = doc.messages.size();
    return c;
}

const std::vector<std::pair<std::string, std::string>>& element_mapping() {
    static const std::vector<std::pair<std::string, std::string>> rows{
        {"collaborativeProcess", "definitions + collaboration"},
        {"participants", "participant + process (pool)"},
        {"CIS", "participant + process (pool)"},
        {"role", "lane"},
        {"performsBusinessService", "task"},
        {"CISservices", "task"},
        {"gateways", "parallelGateway | eventBasedGateway | exclusiveGateway | inclusiveGateway"},
        {"events", "startEvent | endEvent"},
        {"seqFlow", "sequenceFlow"},
        {"msgFlow", "messageFlow"},
    };
    return rows;
}

BpmnDocument export_bpmn(const ProcessGraph& g) {
    auto diags = completeness_check(g);
    if (!diags.empty()) {
        std::string msg = "process is not complete:";
        for (const auto& d : diags) msg += "\n  " + format_diagnostic(d);
        fail(ErrorCode::IncompleteProcess, msg);
    }
    BpmnDocument doc;
    doc.name = g.name;
    doc.id = "definitions";
    std::map<std::string, std::string> process_of_pool;
    for (const auto& pool : g.pools) {
        BpmnPool bp{pool.id, pool.name, process_for(pool.id), {}};
        process_of_pool[pool.id] = bp.process_id;
        for (const auto& lane : pool.lanes) {
            BpmnLane bl{lane.id, lane.name, {}};
            for (const auto& n : g.nodes)
                if (n.pool == pool.id && n.lane == lane.id) bl.node_refs.push_back(n.id);
            bp.lanes.push_back(std::move(bl));
        }
        std::sort(bp.lanes.begin(), bp.lanes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
        doc.pools.push_back(std::move(bp));
    }
    std::sort(doc.pools.begin(), doc.pools.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& n : g.nodes) {
        BpmnNode bn{n.id, n.name, element_for(n), "", process_of_pool.at(n.pool), n.lane};
        if (n.kind == NodeKind::Gateway) bn.direction = n.direction == GatewayDirection::Diverging ? "Diverging" : "Converging";
        doc.nodes.push_back(std::move(bn));
    }
    for (const auto& f : g.flows) {
        if (f.kind == FlowKind::Message)
            doc.messages.push_back({f.id, f.source, f.target, ""});
        else
            doc.sequence.push_back({f.id, f.source, f.target, process_of_pool.at(g.find_node(f.source)->pool)});
    }
    auto by_process = [](const auto& a, const auto& b) { return std::tie(a.process, a.id) < std::tie(b.process, b.id); };
    std::sort(doc.nodes.begin(), doc.nodes.end(), by_process);
    std::sort(doc.sequence.begin(), doc.sequence.end(), by_process);
    std::sort(doc.messages.begin(), doc.messages.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return doc;
}

std::string serialize_bpmn(const BpmnDocument& doc, bool pretty) {
    XmlWriter w(pretty);
    w.declaration();
    w.open("bpmn:definitions", {{"xmlns:bpmn", kBpmnNamespace},
                                {"id", doc.id},
                                {"name", doc.name},
                                {"targetNamespace", "urn:cbp:process"},
                                {"exporter", "cbpgen"}});
    w.open("bpmn:collaboration", {{"id", "collaboration"}});
    for (const auto& p : doc.pools) w.empty("bpmn:participant", {{"id", p.id}, {"name", p.name}, {"processRef", p.process_id}});
    for (const auto& m : doc.messages)
        w.empty("bpmn:messageFlow", {{"id", m.id}, {"sourceRef", m.source}, {"targetRef", m.target}});
    w.close();
    for (const auto& p : doc.pools) {
        w.open("bpmn:process", {{"id", p.process_id}, {"name", p.name}, {"isExecutable", "false"}});
        if (!p.lanes.empty()) {
            w.open("bpmn:laneSet", {{"id", "laneset__" + p.process_id}});
            for (const auto& lane : p.lanes) {
                if (lane.node_refs.empty()) {
                    w.empty("bpmn:lane", {{"id", lane.id}, {"name", lane.name}});
                    continue;
                }
                w.open("bpmn:lane", {{"id", lane.id}, {"name", lane.name}});
                for (const auto& r : lane.node_refs) w.text_element("bpmn:flowNodeRef", {}, r);
                w.close();
            }
            w.close();
        }
        for (const auto& n : doc.nodes) {
            if (n.process != p.process_id) continue;
            XmlAttrs a{{"id", n.id}};
            if (!n.name.empty()) a.emplace_back("name", n.name);
            if (!n.direction.empty()) a.emplace_back("gatewayDirection", n.direction);
            if (n.element == BpmnElement::EventBasedGateway) {
                a.emplace_back("instantiate", "false");
                a.emplace_back("eventGatewayType", "Exclusive");
            }
            w.empty("bpmn:" + std::string(element_name(n.element)), a);
        }
        for (const auto& e : doc.sequence)
            if (e.process == p.process_id)
                w.empty("bpmn:sequenceFlow", {{"id", e.id}, {"sourceRef", e.source}, {"targetRef", e.target}});
        w.close();
    }
    w.close();
    return w.str();
}

namespace {

[[noreturn]] void bad(const std::string& why) { fail(ErrorCode::ParseError, why); }

std::string need(const XmlNode& n, const char* key) {
    auto v = n.attr(key);
    if (!v) bad("<" + n.name + "> lacks '" + key + "'");
    return *v;
}

}  // namespace

BpmnDocument parse_bpmn(const std::string& xml) {
    XmlNode root = parse_xml(xml);
    if (root.local_name() != "definitions") bad("root element must be definitions");
    BpmnDocument doc;
    doc.id = root.attr("id").value_or("");
    doc.name = root.attr("name").value_or("");
    std::map<std::string, std::size_t> pool_of_process;
    for (const auto* c : root.children_named("collaboration")) {
        for (const auto* p : c->children_named("participant")) {
            pool_of_process[need(*p, "processRef")] = doc.pools.size();
            doc.pools.push_back({need(*p, "id"), p->attr("name").value_or(""), need(*p, "processRef"), {}});
        }
        for (const auto* m : c->children_named("messageFlow"))
            doc.messages.push_back({need(*m, "id"), need(*m, "sourceRef"), need(*m, "targetRef"), ""});
    }
    for (const auto* proc : root.children_named("process")) {
        auto pid = need(*proc, "id");
        auto it = pool_of_process.find(pid);
        if (it == pool_of_process.end()) bad("process '" + pid + "' has no participant");
        auto& pool = doc.pools[it->second];
        std::map<std::string, std::string> lane_of;
        for (const auto& el : proc->children) {
            auto kind = el.local_name();
            if (kind == "laneSet") {
                for (const auto* l : el.children_named("lane")) {
                    BpmnLane lane{need(*l, "id"), l->attr("name").value_or(""), {}};
                    for (const auto* r : l->children_named("flowNodeRef")) {
                        lane.node_refs.push_back(r->text);
                        lane_of[r->text] = lane.id;
                    }
                    pool.lanes.push_back(std::move(lane));
                }
            } else if (kind == "sequenceFlow") {
                doc.sequence.push_back({need(el, "id"), need(el, "sourceRef"), need(el, "targetRef"), pid});
            } else if (auto e = parse_element(kind)) {
                BpmnNode n{need(el, "id"), el.attr("name").value_or(""), *e, el.attr("gatewayDirection").value_or(""), pid, ""};
                auto l = lane_of.find(n.id);
                if (l != lane_of.end()) n.lane = l->second;
                doc.nodes.push_back(std::move(n));
            } else {
                bad("unsupported process element <" + el.name + ">");
            }
        }
    }
    return doc;
}

namespace {

struct ElementRule {
    std::set<std::string> required;
    std::set<std::string> optional;
    std::vector<std::set<std::string>> children;  // ordered groups
    bool text = false;
};

const std::map<std::string, ElementRule>& schema_rules() {
    static const std::map<std::string, ElementRule> rules = [] {
        const std::set<std::string> base{"id", "name"};
        const std::set<std::string> gw{"id", "name", "gatewayDirection"};
        std::set<std::string> flow_elements{"sequenceFlow"};
        for (auto e : kAllElements) flow_elements.insert(std::string(element_name(e)));
        std::map<std::string, ElementRule> r;
        r["definitions"] = {{"targetNamespace"}, {"id", "name", "exporter", "exporterVersion"}, {{"collaboration", "process"}}};
        r["collaboration"] = {{}, {"id", "name", "isClosed"}, {{"participant"}, {"messageFlow"}}};
        r["participant"] = {{}, {"id", "name", "processRef"}, {}};
        r["messageFlow"] = {{"sourceRef", "targetRef"}, base, {}};
        r["process"] = {{}, {"id", "name", "isExecutable", "processType"}, {{"laneSet"}, flow_elements}};
        r["laneSet"] = {{}, base, {{"lane"}}};
        r["lane"] = {{}, base, {{"flowNodeRef"}}};
        r["flowNodeRef"] = {{}, {}, {}, true};
        r["task"] = {{}, base, {}};
        r["startEvent"] = {{}, base, {}};
        r["endEvent"] = {{}, base, {}};
        r["parallelGateway"] = {{}, gw, {}};
        r["exclusiveGateway"] = {{}, gw, {}};
        r["inclusiveGateway"] = {{}, gw, {}};
        r["eventBasedGateway"] = {{}, {"id", "name", "gatewayDirection", "instantiate", "eventGatewayType"}, {}};
        r["sequenceFlow"] = {{"sourceRef", "targetRef"}, base, {}};
        return r;
    }();
    return rules;
}

bool is_ncname(std::string_view s) {
    if (s.empty()) return false;
    auto start_ok = [](unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; };
    auto rest_ok = [&](unsigned char c) { return start_ok(c) || std::isdigit(c) || c == '-' || c == '.'; };
    if (!start_ok(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin() + 1, s.end(), [&](char c) { return rest_ok(static_cast<unsigned char>(c)); });
}

bool is_qname(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos) return is_ncname(s);
    return is_ncname(s.substr(0, colon)) && is_ncname(s.substr(colon + 1));
}

class BpmnValidator {
public:
    Diagnostics run(const std::string& xml) {
        XmlNode root;
        try {
            root = parse_xml(xml);
        } catch (const Error& e) {
            add("parse-error", e.what());
            return diags_;
        }
        if (root.local_name() != "definitions") add("schema", "root element is <" + root.name + ">, expected definitions");
        walk(root, {}, nullptr);
        if (!diags_.empty()) return diags_;
        for (const auto& ref : idrefs_)
            if (!ids_.contains(ref)) add("dangling-reference", "reference to unknown id '" + ref + "'");
        if (diags_.empty()) structure(root);
        return diags_;
    }

private:
    void add(std::string code, std::string msg) { diags_.push_back({Severity::Error, std::move(code), std::move(msg)}); }

    void walk(const XmlNode& n, std::map<std::string, std::string> scope, const XmlNode* parent) {
        for (const auto& [k, v] : n.attrs) {
            if (k == "xmlns") scope[""] = v;
            else if (k.rfind("xmlns:", 0) == 0) scope[k.substr(6)] = v;
        }
        auto colon = n.name.find(':');
        std::string prefix = colon == std::string::npos ? "" : n.name.substr(0, colon);
        std::string local(n.local_name());
        auto ns = scope.find(prefix);
        if (ns == scope.end() || ns->second != kBpmnNamespace) {
            add("schema", "element <" + n.name + "> is not in the BPMN model namespace");
            return;
        }
        const auto& rules = schema_rules();
        auto rule = rules.find(local);
        if (rule == rules.end()) {
            add("schema", "element <" + local + "> is not allowed");
            return;
        }
        if (parent) {
            const auto& pr = rules.at(std::string(parent->local_name()));
            bool allowed = std::any_of(pr.children.begin(), pr.children.end(), [&](const auto& grp) { return grp.contains(local); });
            if (!allowed) add("schema", "<" + local + "> may not appear inside <" + std::string(parent->local_name()) + ">");
        }
        for (const auto& req : rule->second.required)
            if (!n.attrs.contains(req)) add("schema", "<" + local + "> lacks required attribute '" + req + "'");
        for (const auto& [k, v] : n.attrs) {
            if (k == "xmlns" || k.rfind("xmlns:", 0) == 0) continue;
            if (!rule->second.required.contains(k) && !rule->second.optional.contains(k)) {
                add("schema", "attribute '" + k + "' is not allowed on <" + local + ">");
                continue;
            }
            check_value(local, k, v);
        }
        if (rule->second.text) {
            if (!is_ncname(n.text)) add("schema", "<" + local + "> must hold an id reference, got '" + n.text + "'");
            idrefs_.push_back(n.text);
        } else if (!n.text.empty()) {
            add("schema", "<" + local + "> may not contain text");
        }
        std::size_t rank = 0;
        const auto& groups = rule->second.children;
        for (const auto& c : n.children) {
            std::string cl(c.local_name());
            std::size_t r = 0;
            while (r < groups.size() && !groups[r].contains(cl)) ++r;
            if (r < groups.size()) {
                if (r < rank) add("schema", "<" + cl + "> is out of order inside <" + local + ">");
                rank = std::max(rank, r);
            }
            walk(c, scope, &n);
        }
    }

    void check_value(const std::string& el, const std::string& attr, const std::string& v) {
        auto enum_check = [&](std::initializer_list<const char*> allowed) {
            for (const char* a : allowed)
                if (v == a) return;
            add("schema", "value '" + v + "' of " + el + "/@" + attr + " is not allowed");
        };
        if (attr == "id") {
            if (!is_ncname(v)) add("schema", "id '" + v + "' is not an NCName");
            else if (!ids_.insert(v).second) add("schema", "duplicate id '" + v + "'");
        } else if (attr == "gatewayDirection") {
            enum_check({"Unspecified", "Converging", "Diverging", "Mixed"});
        } else if (attr == "isExecutable" || attr == "isClosed" || attr == "instantiate") {
            enum_check({"true", "false", "1", "0"});
        } else if (attr == "eventGatewayType") {
            enum_check({"Exclusive", "Parallel"});
        } else if (attr == "processType") {
            enum_check({"None", "Public", "Private"});
        } else if (attr == "sourceRef" || attr == "targetRef") {
            if (el == "sequenceFlow") {
                if (!is_ncname(v)) add("schema", "'" + v + "' is not an id reference");
                idrefs_.push_back(v);
            } else if (!is_qname(v)) {
                add("schema", "'" + v + "' is not a QName");
            }
        } else if (attr == "processRef") {
            if (!is_qname(v)) add("schema", "'" + v + "' is not a QName");
        }
    }

    void structure(const XmlNode& root) {
        std::map<std::string, std::string> process_of;  // flow node -> process
        std::set<std::string> processes, participants;
        for (const auto* proc : root.children_named("process")) {
            auto pid = proc->attr("id").value_or("");
            processes.insert(pid);
            for (const auto& el : proc->children)
                if (parse_element(el.local_name())) process_of[el.attr("id").value_or("")] = pid;
        }
        for (const auto* c : root.children_named("collaboration")) {
            for (const auto* p : c->children_named("participant")) {
                participants.insert(p->attr("id").value_or(""));
                auto ref = p->attr("processRef");
                if (ref && !processes.contains(*ref)) add("dangling-reference", "participant refers to unknown process '" + *ref + "'");
            }
            for (const auto* m : c->children_named("messageFlow")) {
                auto s = m->attr("sourceRef").value_or(""), t = m->attr("targetRef").value_or("");
                auto ps = process_of.find(s), pt = process_of.find(t);
                if ((ps == process_of.end() && !participants.contains(s)) || (pt == process_of.end() && !participants.contains(t))) {
                    add("dangling-reference", "message flow '" + m->attr("id").value_or("") + "' has an unknown endpoint");
                } else if (ps != process_of.end() && pt != process_of.end() && ps->second == pt->second) {
                    add("intra-pool-message-flow", "message flow '" + m->attr("id").value_or("") + "' stays inside one pool");
                }
            }
        }
        for (const auto* proc : root.children_named("process")) {
            auto pid = proc->attr("id").value_or("");
            std::map<std::string, int> lane_hits;
            bool has_lanes = !proc->children_named("laneSet").empty();
            for (const auto* ls : proc->children_named("laneSet"))
                for (const auto* l : ls->children_named("lane"))
                    for (const auto* r : l->children_named("flowNodeRef")) {
                        auto it = process_of.find(r->text);
                        if (it == process_of.end() || it->second != pid)
                            add("lane-membership", "lane '" + l->attr("id").value_or("") + "' refers to '" + r->text + "' outside its process");
                        ++lane_hits[r->text];
                    }
            for (const auto& el : proc->children) {
                if (el.local_name() == "sequenceFlow") {
                    for (const char* end : {"sourceRef", "targetRef"}) {
                        auto ref = el.attr(end).value_or("");
                        auto it = process_of.find(ref);
                        if (it == process_of.end())
                            add("dangling-reference", "sequence flow '" + el.attr("id").value_or("") + "' refers to '" + ref + "', not a flow node");
                        else if (it->second != pid)
                            add("cross-pool-sequence-flow", "sequence flow '" + el.attr("id").value_or("") + "' leaves its process");
                    }
                } else if (has_lanes && parse_element(el.local_name())) {
                    auto id = el.attr("id").value_or("");
                    if (lane_hits[id] != 1)
                        add("lane-membership", "'" + id + "' is in " + std::to_string(lane_hits[id]) + " lanes; exactly one expected");
                }
            }
        }
    }

    Diagnostics diags_;
    std::set<std::string> ids_;
    std::vector<std::string> idrefs_;
};

}  // namespace

Diagnostics validate_bpmn(const std::string& xml) { return BpmnValidator().run(xml); }

}  // namespace cbp
