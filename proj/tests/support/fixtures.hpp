#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cbp/assembler.hpp"
#include "cbp/engine.hpp"
#include "cbp/ingestion.hpp"
#include "cbp/network_doc.hpp"
#include "cbp/ruleset.hpp"
#include "cbp/seed.hpp"

namespace fixtures {

inline const std::filesystem::path data_dir{CBP_TEST_DATA_DIR};
inline const std::filesystem::path schema_dir{CBP_TEST_SCHEMA_DIR};

inline std::filesystem::path seed_path() { return data_dir / "seeds" / "ph-mini.seed"; }
inline std::filesystem::path ab_xml() { return data_dir / "networks" / "ab-network.xml"; }
inline std::filesystem::path ab_json() { return data_dir / "networks" / "ab-network.json"; }

inline std::string read(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline cbp::KnowledgeBase seed_kb() { return cbp::load_seed(seed_path().string()); }

inline cbp::KnowledgeBase ab_input() {
    auto kb = seed_kb();
    cbp::ingest_network(kb, cbp::load_network(ab_xml().string()));
    return kb;
}

inline cbp::KnowledgeBase ab_deduced() {
    auto kb = ab_input();
    cbp::run_to_fixpoint(kb, cbp::builtin_ruleset());
    return kb;
}

inline const char* kDivGateway = "gw_div__mis__dep__place_order__obtain_order__purchase_order";
inline const char* kJoinGateway = "gw_join__end";
inline const char* kDepPurchase = "dep__place_order__obtain_order__purchase_order";
inline const char* kDepProducts = "dep__prepare_products_to_deliver__receive_products__products";
inline const char* kDepInvoice = "dep__transfer_invoice__pay_invoice__invoice";

inline cbp::ProcessGraph ab_graph() { return cbp::build_process(ab_deduced()); }

inline cbp::ProcessGraph ab_complete() {
    auto g = ab_graph();
    g = cbp::assign_gateway_type(g, kDivGateway, cbp::GatewayType::Parallel);
    return cbp::assign_gateway_type(g, kJoinGateway, cbp::GatewayType::DataBasedExclusive);
}

// One-dependency fixture: S sends r to T, coordinated by C.
inline cbp::KnowledgeBase single_dependency_kb() {
    auto doc = cbp::parse_network_json(R"({"network": "ST",
        "participants": [{"name": "S", "roles": ["sender"]}, {"name": "T", "roles": ["taker"]}],
        "relationships": [{"type": "supplier-customer", "p1": "S", "p2": "T", "duration": "continuous"}],
        "topology": {"power": "central", "duration": "continuous"}, "commonGoals": []})");
    auto seed = cbp::seed_to_kb(cbp::parse_seed_string(R"(
[resources]
r
[business-services]
emit; out: r
absorb; in: r
[abstract-services]
send: emit
take: absorb
[roles]
sender: send
taker: take
[coordination-services]
carry: r
)"));
    cbp::ingest_network(seed, doc);
    cbp::run_to_fixpoint(seed, cbp::builtin_ruleset());
    return seed;
}

}  // namespace fixtures
