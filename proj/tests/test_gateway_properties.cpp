#include <gtest/gtest.h>

#include <random>

#include "cbp/assembler.hpp"
#include "support/graph_oracle.hpp"

using namespace cbp;

namespace {

constexpr int kGraphs = 150;
constexpr std::size_t kMaxNodes = 20;

std::vector<std::string> original_ids(const ProcessGraph& g) {
    std::vector<std::string> ids;
    for (const auto* n : g.mediation_nodes()) ids.push_back(n->id);
    return ids;
}

template <typename Fn>
void for_random_graphs(unsigned seed, Fn&& fn) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> size(1, kMaxNodes);
    for (int k = 0; k < kGraphs; ++k) {
        bool partner = k % 4 != 0;
        auto g = oracle::random_mediation_graph(rng, size(rng), partner);
        SCOPED_TRACE("graph " + std::to_string(k));
        fn(g);
    }
}

}  // namespace

TEST(GatewayProperties, NoTaskBranchesAfterInsertion) {
    for_random_graphs(1, [](const ProcessGraph& g) {
        auto out = insert_gateways(g);
        auto deg = oracle::sequence_degrees(out);
        for (const auto& n : out.nodes) {
            if (n.kind == NodeKind::Gateway) {
                if (n.direction == GatewayDirection::Diverging) EXPECT_EQ(deg[n.id].in, 1u) << n.id;
                else EXPECT_EQ(deg[n.id].out <= 1, true) << n.id;
                continue;
            }
            EXPECT_LE(deg[n.id].in, 1u) << n.id;
            EXPECT_LE(deg[n.id].out, 1u) << n.id;
        }
    });
}

TEST(GatewayProperties, ReachabilityIsPreserved) {
    for_random_graphs(2, [](const ProcessGraph& g) {
        auto ids = original_ids(g);
        auto out = insert_gateways(g);
        EXPECT_EQ(oracle::reachability(out, ids), oracle::reachability(g, ids));
        auto evented = generate_events(out);
        EXPECT_EQ(oracle::reachability(evented, ids), oracle::reachability(g, ids));
    });
}

TEST(GatewayProperties, GenerateEventsIsIdempotent) {
    for_random_graphs(3, [](const ProcessGraph& g) {
        auto once = generate_events(insert_gateways(g));
        EXPECT_EQ(generate_events(once), once);
        auto typed = fill_unset_gateways(once, GatewayType::Parallel);
        EXPECT_EQ(generate_events(typed), typed);
    });
}

TEST(GatewayProperties, EveryTerminalReachesTheEnd) {
    for_random_graphs(4, [](const ProcessGraph& g) {
        std::vector<std::string> terminals;
        for (const auto& id : original_ids(g))
            if (g.outgoing(id, FlowKind::Sequence).empty()) terminals.push_back(id);
        auto out = generate_events(insert_gateways(g));
        ASSERT_EQ(out.nodes_of(NodeKind::EndEvent).size(), 1u);
        EXPECT_EQ(out.incoming(kEndEventId, FlowKind::Sequence).size(), 1u);
        for (const auto& t : terminals) EXPECT_TRUE(oracle::reachable(out, t).contains(kEndEventId)) << t;
        for (const auto* n : out.mediation_nodes()) {
            if (n->kind == NodeKind::EndEvent || n->kind == NodeKind::StartEvent) continue;
            EXPECT_TRUE(oracle::reachable(out, n->id).contains(kEndEventId)) << n->id;
        }
    });
}

TEST(GatewayProperties, OnlyDegreeDrivenGatewaysAppear) {
    for_random_graphs(5, [](const ProcessGraph& g) {
        auto deg = oracle::sequence_degrees(g);
        std::size_t expected = 0, terminals = 0;
        for (const auto& id : original_ids(g)) {
            expected += (deg[id].out > 1) + (deg[id].in > 1);
            terminals += deg[id].out == 0;
        }
        expected += terminals > 1;
        EXPECT_EQ(insert_gateways(g).nodes_of(NodeKind::Gateway).size(), expected);
    });
}

TEST(GatewayProperties, CompleteOnceTypedWhenStartable) {
    for_random_graphs(6, [](const ProcessGraph& g) {
        auto out = fill_unset_gateways(generate_events(insert_gateways(g)), GatewayType::DataBasedExclusive);
        // Roots without a partner trigger cannot be reached from the start event.
        bool every_root_triggered = true;
        for (const auto& id : original_ids(g))
            if (g.incoming(id, FlowKind::Sequence).empty() && g.incoming(id, FlowKind::Message).empty()) every_root_triggered = false;
        if (every_root_triggered) EXPECT_TRUE(completeness_check(out).empty());
        else EXPECT_FALSE(completeness_check(out).empty());
    });
}
