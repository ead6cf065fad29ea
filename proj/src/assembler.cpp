#include "cbp/assembler.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "cbp/error.hpp"
#include "cbp/text.hpp"

namespace cbp {

namespace {

std::vector<std::string> ids(const std::set<Term>* terms) {
    std::vector<std::string> out;
    if (terms)
        for (const auto& t : *terms)
            if (!t.is_literal()) out.push_back(t.value);
    return out;
}

std::vector<std::string> ids(const std::set<std::string>* s) {
    return s ? std::vector<std::string>(s->begin(), s->end()) : std::vector<std::string>{};
}

std::string label_of(const KnowledgeBase& kb, const std::string& id) {
    const Instance* i = kb.find_instance(id);
    return i ? i->label : id;
}

bool related(const KnowledgeBase& kb, const std::string& a, const std::string& b) {
    for (const auto& rel : ids(kb.subjects(Predicate::P1, Term{Term::Kind::Id, a}))) {
        auto p2 = ids(kb.objects(Predicate::P2, rel));
        if (std::find(p2.begin(), p2.end(), b) != p2.end()) return true;
    }
    return false;
}

std::string task_id(const std::string& participant, const std::string& service) {
    return slug_join({"task", participant, service});
}

std::string unique_id(const ProcessGraph& g, const std::string& base) {
    if (!g.find_node(base)) return base;
    for (int k = 2;; ++k) {
        auto id = base + "_" + std::to_string(k);
        if (!g.find_node(id)) return id;
    }
}

std::string first_mediation_lane(const ProcessGraph& g) {
    const Pool* p = g.find_pool(kMediationPoolId);
    if (!p || p->lanes.empty()) fail(ErrorCode::ValidationError, "graph has no mediation lane");
    return p->lanes.front().id;
}

Node gateway_node(const ProcessGraph& g, const std::string& base, GatewayDirection dir, const std::string& lane) {
    Node n;
    n.id = unique_id(g, base);
    n.kind = NodeKind::Gateway;
    n.pool = kMediationPoolId;
    n.lane = lane;
    n.direction = dir;
    return n;
}

bool is_event(const Node& n) { return n.kind == NodeKind::StartEvent || n.kind == NodeKind::EndEvent; }

// Mediation nodes other than events that have no outgoing sequence flow.
std::vector<std::string> terminals(const ProcessGraph& g) {
    std::vector<std::string> out;
    for (const Node* n : g.mediation_nodes())
        if (!is_event(*n) && g.outgoing(n->id, FlowKind::Sequence).empty()) out.push_back(n->id);
    return out;
}

void join_terminals(ProcessGraph& g) {
    if (g.find_node(kEndEventId)) return;
    auto ends = terminals(g);
    if (ends.size() < 2) return;
    std::string lane = g.find_node(ends.front())->lane;
    std::string id = g.add_node(gateway_node(g, "gw_join__end", GatewayDirection::Converging, lane)).id;
    for (const auto& t : ends) g.add_flow(FlowKind::Sequence, t, id);
}

}  // namespace

ProcessGraph assemble(const KnowledgeBase& kb) {
    const auto& deps = kb.instances_of(Concept::DependencyBetweenBusinessServices);
    if (deps.empty()) fail(ErrorCode::NoDependencies, "no dependency between business services to mediate");

    ProcessGraph g;
    const auto& networks = kb.instances_of(Concept::CollaborativeNetwork);
    if (!networks.empty()) g.name = label_of(kb, *networks.begin());

    // Partner pools: a lane per played role, a task per provided business service.
    std::vector<Node> tasks;
    for (const auto& p : kb.instances_of(Concept::Participant)) {
        Pool pool{slug_join({"pool", p}), label_of(kb, p), p, {}};
        auto roles = ids(kb.objects(Predicate::playRole, p));
        for (const auto& r : roles) pool.lanes.push_back({slug_join({"lane", p, r}), label_of(kb, r), r});
        auto provided = ids(kb.objects(Predicate::provideAService, p));
        for (const auto& bs : ids(kb.objects(Predicate::provideBusinessService, p))) {
            Node t;
            t.id = task_id(p, bs);
            t.kind = NodeKind::Task;
            t.name = label_of(kb, bs);
            t.pool = pool.id;
            t.ref = bs;
            t.inputs = ids(kb.objects(Predicate::hasInput, bs));
            t.outputs = ids(kb.objects(Predicate::hasOutput, bs));
            for (const auto& r : roles) {
                bool performs = false;
                for (const auto& as : ids(kb.objects(Predicate::performAService, r))) {
                    if (std::find(provided.begin(), provided.end(), as) == provided.end()) continue;
                    if (kb.contains({as, Predicate::hasBusinessService, Term{Term::Kind::Id, bs}})) performs = true;
                }
                if (performs) {
                    t.lane = slug_join({"lane", p, r});
                    break;
                }
            }
            if (t.lane.empty()) {
                if (pool.lanes.empty()) pool.lanes.push_back({slug_join({"lane", p}), pool.name, ""});
                t.lane = pool.lanes.front().id;
            }
            tasks.push_back(std::move(t));
        }
        g.pools.push_back(std::move(pool));
    }

    // Mediation pool: a lane per coordination service chosen for a dependency.
    struct Occurrence {
        std::string dep, from, to, resource, coordinator;
        std::vector<std::string> alternatives;
    };
    std::vector<Occurrence> occs;
    std::set<std::string> chosen;
    for (const auto& e : deps) {
        Occurrence o{e, {}, {}, {}, {}, {}};
        auto from = ids(kb.objects(Predicate::fromBusinessService, e));
        auto to = ids(kb.objects(Predicate::toBusinessService, e));
        auto res = ids(kb.objects(Predicate::containResource, e));
        auto coords = ids(kb.objects(Predicate::isCoordinatedBy, e));
        if (from.size() != 1 || to.size() != 1)
            fail(ErrorCode::ValidationError, "dependency '" + e + "' needs exactly one source and one target service");
        if (coords.empty()) fail(ErrorCode::ValidationError, "dependency '" + e + "' has no coordination service");
        std::sort(coords.begin(), coords.end(), [&](const std::string& a, const std::string& b) {
            return std::pair(label_of(kb, a), a) < std::pair(label_of(kb, b), b);
        });
        o.from = from.front();
        o.to = to.front();
        o.resource = res.empty() ? "" : res.front();
        o.coordinator = coords.front();
        o.alternatives.assign(coords.begin() + 1, coords.end());
        chosen.insert(o.coordinator);
        occs.push_back(std::move(o));
    }
    Pool cis{kMediationPoolId, "CIS", "", {}};
    for (const auto& f : chosen) cis.lanes.push_back({slug_join({"lane", "cis", f}), label_of(kb, f), f});
    g.pools.push_back(std::move(cis));

    for (auto& t : tasks) g.add_node(std::move(t));

    for (const auto& o : occs) {
        Node m;
        m.id = slug_join({"mis", o.dep});
        m.kind = NodeKind::MisTask;
        m.name = label_of(kb, o.coordinator);
        if (!o.resource.empty()) m.name += " (" + label_of(kb, o.resource) + ")";
        m.pool = kMediationPoolId;
        m.lane = slug_join({"lane", "cis", o.coordinator});
        m.ref = o.dep;
        std::string mid = g.add_node(std::move(m)).id;
        if (!o.alternatives.empty()) {
            std::string text = "also coordinable by:";
            for (const auto& a : o.alternatives) text += " " + label_of(kb, a) + (a == o.alternatives.back() ? "" : ",");
            g.annotations.push_back({mid, text});
        }

        auto sources = ids(kb.subjects(Predicate::provideBusinessService, Term{Term::Kind::Id, o.from}));
        auto targets = ids(kb.subjects(Predicate::provideBusinessService, Term{Term::Kind::Id, o.to}));
        std::set<std::pair<std::string, std::string>> pairs, fallback;
        for (const auto& y : sources)
            for (const auto& x : targets) {
                if (x == y) continue;
                fallback.emplace(y, x);
                if (related(kb, y, x) || related(kb, x, y)) pairs.emplace(y, x);
            }
        if (pairs.empty()) pairs = fallback;
        for (const auto& [y, x] : pairs) {
            g.add_flow(FlowKind::Message, task_id(y, o.from), mid);
            g.add_flow(FlowKind::Message, mid, task_id(x, o.to));
        }
    }

    for (const auto& s : kb.instances_of(Concept::DependencyBetweenMISServices)) {
        for (const auto& e1 : ids(kb.objects(Predicate::fromDependency, s)))
            for (const auto& e2 : ids(kb.objects(Predicate::toDependency, s))) {
                auto a = slug_join({"mis", e1}), b = slug_join({"mis", e2});
                if (a != b && g.find_node(a) && g.find_node(b)) g.add_flow(FlowKind::Sequence, a, b);
            }
    }
    std::sort(g.annotations.begin(), g.annotations.end(),
              [](const Annotation& a, const Annotation& b) { return std::tie(a.target, a.text) < std::tie(b.target, b.text); });
    return g;
}

ProcessGraph insert_gateways(ProcessGraph g) {
    std::vector<std::string> candidates;
    for (const Node* n : g.mediation_nodes())
        if (n->kind != NodeKind::Gateway) candidates.push_back(n->id);

    for (const auto& id : candidates) {
        auto out = g.outgoing(id, FlowKind::Sequence);
        if (out.size() <= 1) continue;
        std::vector<std::string> succ;
        for (const Flow* f : out) succ.push_back(f->target);
        std::string gw = g.add_node(gateway_node(g, "gw_div__" + id, GatewayDirection::Diverging, g.find_node(id)->lane)).id;
        for (const auto& s : succ) {
            g.remove_flow(flow_id(FlowKind::Sequence, id, s));
            g.add_flow(FlowKind::Sequence, gw, s);
        }
        g.add_flow(FlowKind::Sequence, id, gw);
    }
    for (const auto& id : candidates) {
        auto in = g.incoming(id, FlowKind::Sequence);
        if (in.size() <= 1) continue;
        std::vector<std::string> pred;
        for (const Flow* f : in) pred.push_back(f->source);
        std::string gw = g.add_node(gateway_node(g, "gw_conv__" + id, GatewayDirection::Converging, g.find_node(id)->lane)).id;
        for (const auto& p : pred) {
            g.remove_flow(flow_id(FlowKind::Sequence, p, id));
            g.add_flow(FlowKind::Sequence, p, gw);
        }
        g.add_flow(FlowKind::Sequence, gw, id);
    }
    join_terminals(g);
    return g;
}

ProcessGraph generate_events(ProcessGraph g, const EventOptions& options) {
    std::optional<GatewayType> split_type;
    if (const Node* s = g.find_node("gw_split__start")) split_type = s->gateway_type;
    for (const char* id : {kStartEventId, kEndEventId, "gw_split__start"}) g.remove_node(id);
    if (!g.find_pool(kMediationPoolId)) return g;

    join_terminals(g);
    auto ends = terminals(g);
    Node end;
    end.id = kEndEventId;
    end.kind = NodeKind::EndEvent;
    end.name = "end";
    end.pool = kMediationPoolId;
    end.lane = ends.empty() ? first_mediation_lane(g) : g.find_node(ends.front())->lane;

    // Initiators: tasks nothing sends a message to (and, unless the literal
    // rule is on, whose inputs no other task produces).
    std::vector<std::string> initiators;
    for (const Node* t : g.nodes_of(NodeKind::Task)) {
        if (!g.incoming(t->id, FlowKind::Message).empty()) continue;
        if (!options.literal_start_rule) {
            bool fed = false;
            for (const Node* other : g.nodes_of(NodeKind::Task)) {
                if (other->ref == t->ref) continue;
                for (const auto& r : t->inputs)
                    if (std::find(other->outputs.begin(), other->outputs.end(), r) != other->outputs.end()) fed = true;
            }
            if (fed) continue;
        }
        initiators.push_back(t->id);
    }
    std::set<std::string> triggered;
    for (const auto& i : initiators)
        for (const Flow* f : g.outgoing(i, FlowKind::Message)) {
            const Node* m = g.find_node(f->target);
            if (m && m->kind == NodeKind::MisTask && g.incoming(m->id, FlowKind::Sequence).empty()) triggered.insert(m->id);
        }

    Node start;
    start.id = kStartEventId;
    start.kind = NodeKind::StartEvent;
    start.name = "start";
    start.pool = kMediationPoolId;
    start.lane = triggered.empty() ? first_mediation_lane(g) : g.find_node(*triggered.begin())->lane;

    g.add_node(std::move(end));
    g.add_node(std::move(start));
    for (const auto& t : ends) g.add_flow(FlowKind::Sequence, t, kEndEventId);
    for (const auto& i : initiators) g.add_flow(FlowKind::Message, i, kStartEventId);
    if (triggered.size() == 1) {
        g.add_flow(FlowKind::Sequence, kStartEventId, *triggered.begin());
    } else if (triggered.size() > 1) {
        Node split = gateway_node(g, "gw_split__start", GatewayDirection::Diverging, g.find_node(kStartEventId)->lane);
        if (split_type) split.gateway_type = *split_type;
        std::string sid = g.add_node(std::move(split)).id;
        g.add_flow(FlowKind::Sequence, kStartEventId, sid);
        for (const auto& m : triggered) g.add_flow(FlowKind::Sequence, sid, m);
    }
    return g;
}

ProcessGraph assign_gateway_type(ProcessGraph g, const std::string& gateway_id, GatewayType type) {
    Node* n = g.find_node(gateway_id);
    if (!n || n->kind != NodeKind::Gateway) fail(ErrorCode::UnknownGateway, "no gateway '" + gateway_id + "'");
    if (type == GatewayType::Unset) fail(ErrorCode::UnsupportedType, "gateway type must be one of the supported types");
    n->gateway_type = type;
    return g;
}

ProcessGraph assign_gateway_type(ProcessGraph g, const std::string& gateway_id, std::string_view type) {
    auto t = parse_gateway_type(type);
    if (!g.find_node(gateway_id) || g.find_node(gateway_id)->kind != NodeKind::Gateway)
        fail(ErrorCode::UnknownGateway, "no gateway '" + gateway_id + "'");
    if (!t)
        fail(ErrorCode::UnsupportedType, "unsupported gateway type '" + std::string(type) +
                                             "' (parallel, event-based-exclusive, data-based-exclusive, data-based-inclusive)");
    return assign_gateway_type(std::move(g), gateway_id, *t);
}

ProcessGraph apply_assignments(ProcessGraph g, const GatewayAssignment& assignments) {
    for (const auto& [id, t] : assignments) g = assign_gateway_type(std::move(g), id, t);
    return g;
}

ProcessGraph fill_unset_gateways(ProcessGraph g, GatewayType type) {
    if (type == GatewayType::Unset) fail(ErrorCode::UnsupportedType, "default gateway type must be a supported type");
    for (auto& n : g.nodes)
        if (n.kind == NodeKind::Gateway && n.gateway_type == GatewayType::Unset) n.gateway_type = type;
    return g;
}

GatewayAssignment gateway_assignments(const ProcessGraph& g) {
    GatewayAssignment out;
    for (const auto& n : g.nodes)
        if (n.kind == NodeKind::Gateway && n.gateway_type != GatewayType::Unset) out[n.id] = n.gateway_type;
    return out;
}

Diagnostics completeness_check(const ProcessGraph& g) {
    Diagnostics d;
    auto err = [&](std::string code, std::string msg) { d.push_back({Severity::Error, std::move(code), std::move(msg)}); };
    for (const auto& n : g.nodes)
        if (n.kind == NodeKind::Gateway && n.gateway_type == GatewayType::Unset)
            err("untyped-gateway", "gateway '" + n.id + "' has no type");

    auto starts = g.nodes_of(NodeKind::StartEvent);
    auto ends = g.nodes_of(NodeKind::EndEvent);
    if (starts.size() != 1) err(starts.empty() ? "missing-start-event" : "extra-start-event",
                                std::to_string(starts.size()) + " start events; exactly one expected");
    if (ends.size() != 1) err(ends.empty() ? "missing-end-event" : "extra-end-event",
                              std::to_string(ends.size()) + " end events; exactly one expected");
    if (starts.size() != 1 || ends.size() != 1) return d;

    auto reach = [&](const std::string& from, bool forward) {
        std::set<std::string> seen{from};
        std::deque<std::string> queue{from};
        while (!queue.empty()) {
            auto cur = queue.front();
            queue.pop_front();
            for (const Flow* f : forward ? g.outgoing(cur, FlowKind::Sequence) : g.incoming(cur, FlowKind::Sequence)) {
                const auto& next = forward ? f->target : f->source;
                if (seen.insert(next).second) queue.push_back(next);
            }
        }
        return seen;
    };
    auto from_start = reach(starts.front()->id, true);
    auto to_end = reach(ends.front()->id, false);
    for (const Node* n : g.mediation_nodes()) {
        if (!from_start.contains(n->id)) err("unreachable-node", "'" + n->id + "' is not reachable from the start event");
        if (!to_end.contains(n->id)) err("dead-end-node", "the end event is not reachable from '" + n->id + "'");
    }
    for (const auto& f : g.flows) {
        const Node* s = g.find_node(f.source);
        const Node* t = g.find_node(f.target);
        if (!s || !t) {
            err("dangling-flow", "flow '" + f.id + "' has a missing endpoint");
            continue;
        }
        bool crosses = g.in_mediation(*s) != g.in_mediation(*t);
        if (f.kind == FlowKind::Message && !crosses)
            err("bad-message-flow", "message flow '" + f.id + "' does not cross the partner/mediation boundary");
        if (f.kind == FlowKind::Sequence && (!g.in_mediation(*s) || !g.in_mediation(*t)))
            err("bad-sequence-flow", "sequence flow '" + f.id + "' leaves the mediation pool");
    }
    return d;
}

ProcessGraph build_process(const KnowledgeBase& kb, const EventOptions& options) {
    return generate_events(insert_gateways(assemble(kb)), options);
}

}  // namespace cbp
