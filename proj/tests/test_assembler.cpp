#include <gtest/gtest.h>

#include <algorithm>

#include <nlohmann/json.hpp>

#include "cbp/assembler.hpp"
#include "cbp/error.hpp"
#include "support/fixtures.hpp"

using namespace cbp;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return static_cast<ErrorCode>(0);
}

bool has_code(const Diagnostics& d, const std::string& code) {
    return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) { return x.code == code; });
}

std::size_t count(const ProcessGraph& g, FlowKind k) {
    return static_cast<std::size_t>(std::count_if(g.flows.begin(), g.flows.end(), [&](const Flow& f) { return f.kind == k; }));
}

std::size_t lane_count(const ProcessGraph& g) {
    std::size_t n = 0;
    for (const auto& p : g.pools) n += p.lanes.size();
    return n;
}

std::string mis(int i) { return "mis__n" + std::to_string(i); }

// Mediation-only graph with MIS nodes 0..n-1 and the given sequence edges.
ProcessGraph mediation(int n, const std::vector<std::pair<int, int>>& edges) {
    ProcessGraph g;
    g.name = "t";
    g.pools.push_back({kMediationPoolId, "CIS", "", {{"lane__cis__c", "c", "c"}}});
    for (int i = 0; i < n; ++i) {
        Node node;
        node.id = mis(i);
        node.kind = NodeKind::MisTask;
        node.name = node.id;
        node.pool = kMediationPoolId;
        node.lane = "lane__cis__c";
        g.add_node(node);
    }
    for (auto [a, b] : edges) g.add_flow(FlowKind::Sequence, mis(a), mis(b));
    return g;
}

const std::string kMisPurchase = std::string("mis__") + fixtures::kDepPurchase;
const std::string kMisProducts = std::string("mis__") + fixtures::kDepProducts;
const std::string kMisInvoice = std::string("mis__") + fixtures::kDepInvoice;

}  // namespace

TEST(Assemble, FixtureShapeBeforeGateways) {
    auto g = assemble(fixtures::ab_deduced());
    EXPECT_EQ(g.pools.size(), 3u);
    EXPECT_EQ(lane_count(g), 4u);
    EXPECT_EQ(g.nodes_of(NodeKind::Task).size(), 6u);
    EXPECT_EQ(g.nodes_of(NodeKind::MisTask).size(), 3u);
    EXPECT_TRUE(g.nodes_of(NodeKind::Gateway).empty());
    EXPECT_EQ(count(g, FlowKind::Message), 6u);
    EXPECT_EQ(count(g, FlowKind::Sequence), 2u);
    EXPECT_TRUE(g.find_flow(flow_id(FlowKind::Sequence, kMisPurchase, kMisProducts)));
    EXPECT_TRUE(g.find_flow(flow_id(FlowKind::Sequence, kMisPurchase, kMisInvoice)));
    EXPECT_TRUE(g.find_flow(flow_id(FlowKind::Message, "task__B__place_order", kMisPurchase)));
    EXPECT_TRUE(g.find_flow(flow_id(FlowKind::Message, kMisPurchase, "task__A__obtain_order")));
}

TEST(Assemble, LanesFollowRolesAndCoordinators) {
    auto g = assemble(fixtures::ab_deduced());
    EXPECT_EQ(g.find_node("task__A__obtain_order")->lane, "lane__A__seller");
    EXPECT_EQ(g.find_node("task__B__place_order")->lane, "lane__B__buyer");
    EXPECT_EQ(g.find_node(kMisPurchase)->lane, "lane__cis__manage_flow_of_document");
    EXPECT_EQ(g.find_node(kMisProducts)->lane, "lane__cis__manage_flow_of_material");
    EXPECT_EQ(g.find_node("task__A__obtain_order")->inputs, std::vector<std::string>{"purchase_order"});
}

TEST(Assemble, FullFixtureCounts) {
    auto g = fixtures::ab_graph();
    EXPECT_EQ(g.pools.size(), 3u);
    EXPECT_EQ(lane_count(g), 4u);
    EXPECT_EQ(g.nodes_of(NodeKind::Task).size() + g.nodes_of(NodeKind::MisTask).size(), 9u);
    EXPECT_EQ(g.nodes_of(NodeKind::Gateway).size(), 2u);
    EXPECT_EQ(g.nodes_of(NodeKind::StartEvent).size() + g.nodes_of(NodeKind::EndEvent).size(), 2u);
    EXPECT_EQ(count(g, FlowKind::Sequence), 7u);
    EXPECT_EQ(count(g, FlowKind::Message), 7u);
    EXPECT_TRUE(g.find_node(fixtures::kDivGateway));
    EXPECT_TRUE(g.find_node(fixtures::kJoinGateway));
    EXPECT_TRUE(g.find_flow(flow_id(FlowKind::Message, "task__B__place_order", kStartEventId)));
    EXPECT_TRUE(g.find_flow(flow_id(FlowKind::Sequence, kStartEventId, kMisPurchase)));
}

TEST(Assemble, NoDependencies) {
    auto kb = fixtures::seed_kb();
    EXPECT_EQ(code_of([&] { assemble(kb); }), ErrorCode::NoDependencies);
}

TEST(Assemble, SingleDependency) {
    auto g = build_process(fixtures::single_dependency_kb());
    EXPECT_EQ(g.nodes_of(NodeKind::MisTask).size(), 1u);
    EXPECT_EQ(count(g, FlowKind::Message), 3u);  // two around the occurrence, one into the start event
    EXPECT_TRUE(g.nodes_of(NodeKind::Gateway).empty());
    auto plain = assemble(fixtures::single_dependency_kb());
    EXPECT_EQ(count(plain, FlowKind::Message), 2u);
    EXPECT_EQ(count(plain, FlowKind::Sequence), 0u);
    EXPECT_TRUE(completeness_check(g).empty());
}

TEST(Assemble, IsDeterministic) {
    EXPECT_EQ(graph_to_xml(fixtures::ab_graph()), graph_to_xml(fixtures::ab_graph()));
}

TEST(Assemble, AlternativeCoordinatorsBecomeAnnotations) {
    auto kb = fixtures::ab_input();
    kb.add_instance("courier", "courier", {Concept::CoordinationService});
    kb.assert_fact({"courier", Predicate::manipulateResource, Term::id("purchase_order"), {}});
    run_to_fixpoint(kb, builtin_ruleset());
    auto g = assemble(kb);
    EXPECT_EQ(g.find_node(kMisPurchase)->lane, "lane__cis__courier");
    ASSERT_EQ(g.annotations.size(), 1u);
    EXPECT_EQ(g.annotations[0].target, kMisPurchase);
    EXPECT_NE(g.annotations[0].text.find("manage flow of document"), std::string::npos);
}

TEST(Gateways, ChainGetsNoGateways) {
    auto g = insert_gateways(mediation(4, {{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_TRUE(g.nodes_of(NodeKind::Gateway).empty());
    EXPECT_EQ(count(g, FlowKind::Sequence), 3u);
}

TEST(Gateways, SplitAndMerge) {
    auto g = insert_gateways(mediation(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    ASSERT_TRUE(g.find_node("gw_div__" + mis(0)));
    ASSERT_TRUE(g.find_node("gw_conv__" + mis(3)));
    EXPECT_EQ(g.find_node("gw_div__" + mis(0))->direction, GatewayDirection::Diverging);
    EXPECT_EQ(g.find_node("gw_conv__" + mis(3))->direction, GatewayDirection::Converging);
    EXPECT_EQ(g.nodes_of(NodeKind::Gateway).size(), 2u);
    EXPECT_EQ(g.outgoing(mis(0), FlowKind::Sequence).size(), 1u);
    EXPECT_EQ(g.incoming(mis(3), FlowKind::Sequence).size(), 1u);
    for (const auto* n : g.nodes_of(NodeKind::Gateway)) EXPECT_EQ(n->gateway_type, GatewayType::Unset);
}

TEST(Gateways, SeveralTerminalsGetAJoin) {
    auto g = insert_gateways(mediation(3, {{0, 1}, {0, 2}}));
    ASSERT_TRUE(g.find_node("gw_join__end"));
    EXPECT_EQ(g.incoming("gw_join__end", FlowKind::Sequence).size(), 2u);
}

TEST(Gateways, InsertIsIdempotent) {
    auto once = insert_gateways(mediation(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    EXPECT_EQ(insert_gateways(once), once);
}

TEST(Events, SingleStartAndEnd) {
    auto g = fixtures::ab_graph();
    EXPECT_EQ(g.nodes_of(NodeKind::StartEvent).size(), 1u);
    EXPECT_EQ(g.nodes_of(NodeKind::EndEvent).size(), 1u);
    EXPECT_EQ(g.incoming(kEndEventId, FlowKind::Sequence).size(), 1u);
    EXPECT_EQ(g.outgoing(kStartEventId, FlowKind::Sequence).size(), 1u);
}

TEST(Events, GenerateIsIdempotentAndKeepsTypes) {
    auto g = fixtures::ab_complete();
    EXPECT_EQ(generate_events(g), g);
}

TEST(Events, IndependentRootsShareOneStartThroughASplit) {
    auto m = mediation(2, {});
    m.pools.push_back({"pool__P", "P", "P", {{"lane__P", "P", ""}}});
    for (int i = 0; i < 2; ++i) {
        Node t;
        t.id = "task__P__s" + std::to_string(i);
        t.kind = NodeKind::Task;
        t.name = t.id;
        t.pool = "pool__P";
        t.lane = "lane__P";
        t.ref = "s" + std::to_string(i);
        m.add_node(t);
        m.add_flow(FlowKind::Message, t.id, mis(i));
    }
    auto out = generate_events(insert_gateways(m));
    ASSERT_TRUE(out.find_node("gw_split__start"));
    EXPECT_EQ(out.outgoing("gw_split__start", FlowKind::Sequence).size(), 2u);
    EXPECT_EQ(out.outgoing(kStartEventId, FlowKind::Sequence).size(), 1u);
    EXPECT_EQ(out.incoming(kStartEventId, FlowKind::Message).size(), 2u);
    out = assign_gateway_type(out, "gw_split__start", GatewayType::Parallel);
    EXPECT_EQ(generate_events(out), out);
}

TEST(Events, LiteralStartRuleAddsInitiators) {
    EventOptions literal;
    literal.literal_start_rule = true;
    auto g = build_process(fixtures::ab_deduced(), literal);
    EXPECT_EQ(g.incoming(kStartEventId, FlowKind::Message).size(), 3u);
    EXPECT_EQ(fixtures::ab_graph().incoming(kStartEventId, FlowKind::Message).size(), 1u);
}

TEST(GatewayTypes, AssignAndErrors) {
    auto g = fixtures::ab_graph();
    g = assign_gateway_type(g, fixtures::kDivGateway, "parallel");
    EXPECT_EQ(g.find_node(fixtures::kDivGateway)->gateway_type, GatewayType::Parallel);
    EXPECT_EQ(code_of([&] { assign_gateway_type(g, "gw_nope", "parallel"); }), ErrorCode::UnknownGateway);
    EXPECT_EQ(code_of([&] { assign_gateway_type(g, kMisPurchase, "parallel"); }), ErrorCode::UnknownGateway);
    EXPECT_EQ(code_of([&] { assign_gateway_type(g, fixtures::kJoinGateway, "complex"); }), ErrorCode::UnsupportedType);
    EXPECT_EQ(code_of([&] { assign_gateway_type(g, fixtures::kJoinGateway, GatewayType::Unset); }), ErrorCode::UnsupportedType);
    for (const char* t : {"parallel", "event-based-exclusive", "data-based-exclusive", "data-based-inclusive"})
        EXPECT_NO_THROW(assign_gateway_type(g, fixtures::kJoinGateway, t)) << t;
}

TEST(GatewayTypes, AssignmentsRoundTrip) {
    auto g = fixtures::ab_complete();
    auto a = gateway_assignments(g);
    EXPECT_EQ(a.size(), 2u);
    EXPECT_EQ(apply_assignments(fixtures::ab_graph(), a), g);
    auto filled = fill_unset_gateways(fixtures::ab_graph(), GatewayType::DataBasedInclusive);
    EXPECT_EQ(filled.find_node(fixtures::kJoinGateway)->gateway_type, GatewayType::DataBasedInclusive);
    EXPECT_EQ(fill_unset_gateways(g, GatewayType::DataBasedInclusive), g);
}

TEST(Completeness, UntypedGatewaysAreReported) {
    auto d = completeness_check(fixtures::ab_graph());
    EXPECT_EQ(d.size(), 2u);
    EXPECT_TRUE(has_code(d, "untyped-gateway"));
    EXPECT_TRUE(completeness_check(fixtures::ab_complete()).empty());
}

TEST(Completeness, StructuralProblems) {
    auto g = fixtures::ab_complete();
    g.remove_node(kEndEventId);
    auto d = completeness_check(g);
    EXPECT_TRUE(has_code(d, "missing-end-event"));

    g = fixtures::ab_complete();
    g.remove_flow(flow_id(FlowKind::Sequence, kStartEventId, kMisPurchase));
    d = completeness_check(g);
    EXPECT_TRUE(has_code(d, "unreachable-node"));

    g = fixtures::ab_complete();
    g.remove_flow(flow_id(FlowKind::Sequence, kMisInvoice, fixtures::kJoinGateway));
    EXPECT_TRUE(has_code(completeness_check(g), "dead-end-node"));

    g = fixtures::ab_complete();
    g.add_flow(FlowKind::Message, "task__A__obtain_order", "task__B__pay_invoice");
    EXPECT_TRUE(has_code(completeness_check(g), "bad-message-flow"));

    g = fixtures::ab_complete();
    g.add_flow(FlowKind::Sequence, "task__A__obtain_order", kMisInvoice);
    EXPECT_TRUE(has_code(completeness_check(g), "bad-sequence-flow"));

    g = fixtures::ab_complete();
    g.flows.push_back({"seq__ghost__x", FlowKind::Sequence, "ghost", "x"});
    EXPECT_TRUE(has_code(completeness_check(g), "dangling-flow"));
}

TEST(GraphDocument, XmlAndJsonRoundTrip) {
    auto g = fixtures::ab_complete();
    g.annotations.push_back({kMisPurchase, "also coordinable by: x"});
    EXPECT_EQ(graph_from_xml(graph_to_xml(g)), g);
    EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
    EXPECT_EQ(code_of([] { graph_from_xml("<collaborativeProcess"); }), ErrorCode::ParseError);
}

TEST(GraphModel, RejectsBadEdits) {
    auto g = fixtures::ab_graph();
    Node dup = *g.find_node(kMisPurchase);
    EXPECT_EQ(code_of([&] { g.add_node(dup); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([&] { g.add_flow(FlowKind::Sequence, "ghost", kMisPurchase); }), ErrorCode::ValidationError);
    Node orphan = dup;
    orphan.id = "mis__orphan";
    orphan.lane = "lane__nowhere";
    EXPECT_EQ(code_of([&] { g.add_node(orphan); }), ErrorCode::ValidationError);
}
