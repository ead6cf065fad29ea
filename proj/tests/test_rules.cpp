#include <gtest/gtest.h>

#include <set>

#include "cbp/engine.hpp"
#include "cbp/error.hpp"
#include "cbp/ruleset.hpp"
#include "support/fixtures.hpp"
#include "support/naive_oracle.hpp"

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

KnowledgeBase seller_a() {
    auto kb = fixtures::seed_kb();
    kb.add_instance("A", "A", {Concept::Participant});
    kb.assert_fact({"A", Predicate::playRole, Term::id("seller"), {}});
    return kb;
}

std::set<std::string> objects_of(const KnowledgeBase& kb, Predicate p, const std::string& s, bool derived_only = true) {
    std::set<std::string> out;
    for (const auto& f : kb.match({s, p, std::nullopt}))
        if (!derived_only || f.provenance.rule) out.insert(f.object.value);
    return out;
}

const Rule& rule(const std::string& id) {
    for (const auto& r : builtin_ruleset())
        if (r.id == id) return r;
    throw std::runtime_error("no rule " + id);
}

KnowledgeBase topology_kb(const std::string& power, const std::string& duration) {
    KnowledgeBase kb;
    kb.add_instance("T", "T", {Concept::Topology});
    kb.assert_fact({"T", Predicate::hasPower, Term::id(power), {}});
    kb.assert_fact({"T", Predicate::hasDuration, Term::id(duration), {}});
    return kb;
}

}  // namespace

TEST(Ruleset, HasTheTenBuiltInRules) {
    std::vector<std::string> ids;
    for (const auto& r : builtin_ruleset()) ids.push_back(r.id);
    EXPECT_EQ(ids, (std::vector<std::string>{"GR1a", "GR1b", "GR2", "GR3a", "GR3b", "GR3seq", "GR4", "GR5a", "GR5b", "GR5c"}));
}

TEST(Ruleset, FormatsInSwrlStyle) {
    EXPECT_EQ(format_rule(rule("GR1a")),
              "GR1a: Participant(?x) ^ playRole(?x, ?y) ^ performAService(?y, ?z) => provideAService(?x, ?z)");
    EXPECT_NE(format_rule(rule("GR4")).find("swrlb:substringBefore(?y, ?a, \" \")"), std::string::npos);
    EXPECT_NE(format_rule(rule("GR5a")).find("hasPower(?x, central)"), std::string::npos);
}

TEST(RuleValidation, RejectsMalformedRules) {
    Rule r;
    r.id = "bad";
    EXPECT_EQ(code_of([&] { validate_rule(r); }), ErrorCode::MalformedRule);

    r.body = {ConceptAtom{Concept::Participant, var("x")}};
    r.head = {PropertyAtom{Predicate::playRole, var("x"), var("unbound")}};
    EXPECT_EQ(code_of([&] { validate_rule(r); }), ErrorCode::MalformedRule);

    r.head = {PropertyAtom{Predicate::playRole, var("x"), var("x")}};
    r.body.push_back(BuiltinAtom{Builtin::ContainsIgnoreCase, {var("x")}});
    EXPECT_EQ(code_of([&] { validate_rule(r); }), ErrorCode::MalformedRule);

    r.body.back() = BuiltinAtom{Builtin::ContainsIgnoreCase, {var("x"), var("later")}};
    EXPECT_EQ(code_of([&] { validate_rule(r); }), ErrorCode::MalformedRule);

    Rule s;
    s.id = "skolem";
    s.body = {ConceptAtom{Concept::Participant, var("x")}};
    s.head = {PropertyAtom{Predicate::name, var("e"), literal("n")}};
    s.skolems = {{"e", {"minted", {"x"}}}};
    EXPECT_EQ(code_of([&] { validate_rule(s); }), ErrorCode::MalformedRule);
    s.head.insert(s.head.begin(), ConceptAtom{Concept::Role, var("e")});
    EXPECT_NO_THROW(validate_rule(s));
}

TEST(Builtins, SubstringBefore) {
    EXPECT_EQ(builtin_substring_before("buy 100 bolts", " "), "buy");
    EXPECT_EQ(builtin_substring_before("buy", " "), "buy");
    EXPECT_EQ(builtin_substring_before(" lead", " "), "");
    EXPECT_EQ(code_of([] { builtin_substring_before("x", ""); }), ErrorCode::EmptySeparator);
}

TEST(Builtins, ContainsIgnoreCase) {
    EXPECT_TRUE(builtin_contains_ignore_case("Buy over internet", "buy"));
    EXPECT_TRUE(builtin_contains_ignore_case("in a store", "STORE"));
    EXPECT_FALSE(builtin_contains_ignore_case("sell product", "buy"));
    EXPECT_EQ(code_of([] { builtin_contains_ignore_case("x", ""); }), ErrorCode::EmptyNeedle);
}

TEST(Engine, GR1DerivesAbstractServicesOfTheRole) {
    auto kb = seller_a();
    auto report = run_to_fixpoint(kb, builtin_ruleset());
    EXPECT_EQ(objects_of(kb, Predicate::provideAService, "A"),
              (std::set<std::string>{"sell_service", "sell_product", "sell_items_from_stock"}));
    ASSERT_TRUE(report.derived.contains("GR1a"));
    EXPECT_EQ(report.derived.at("GR1a").size(), 3u);
    EXPECT_FALSE(report.derived.contains("GR1b"));
}

TEST(Engine, GR1bDerivesRoleFromAbstractService) {
    auto kb = fixtures::seed_kb();
    kb.add_instance("C", "C", {Concept::Participant});
    kb.assert_fact({"C", Predicate::provideAService, Term::id("buy_over_internet"), {}});
    run_to_fixpoint(kb, builtin_ruleset());
    EXPECT_EQ(objects_of(kb, Predicate::playRole, "C"), (std::set<std::string>{"buyer"}));
    EXPECT_EQ(kb.provenance_of({"C", Predicate::playRole, Term::id("buyer")}), Provenance::derived("GR1b"));
}

TEST(Engine, GR2DerivesBusinessServices) {
    auto kb = seller_a();
    run_to_fixpoint(kb, builtin_ruleset());
    EXPECT_EQ(objects_of(kb, Predicate::provideBusinessService, "A"),
              (std::set<std::string>{"obtain_order", "prepare_products_to_deliver", "transfer_invoice"}));
}

TEST(Engine, GR3DerivesTheOrderDependency) {
    auto kb = fixtures::ab_deduced();
    const std::string e = fixtures::kDepPurchase;
    ASSERT_TRUE(kb.has_concept(e, Concept::DependencyBetweenBusinessServices));
    EXPECT_EQ(objects_of(kb, Predicate::fromBusinessService, e), (std::set<std::string>{"place_order"}));
    EXPECT_EQ(objects_of(kb, Predicate::toBusinessService, e), (std::set<std::string>{"obtain_order"}));
    EXPECT_EQ(objects_of(kb, Predicate::containResource, e), (std::set<std::string>{"purchase_order"}));
    EXPECT_EQ(objects_of(kb, Predicate::isCoordinatedBy, e), (std::set<std::string>{"manage_flow_of_document"}));
    EXPECT_TRUE(kb.has_concept("manage_flow_of_document", Concept::MISService));
    EXPECT_TRUE(kb.contains({"net__AB", Predicate::hasMISservice, Term::id("manage_flow_of_document")}));
    EXPECT_TRUE(kb.find_instance(e)->minted());
    EXPECT_EQ(kb.instances_of(Concept::DependencyBetweenBusinessServices).size(), 3u);
}

TEST(Engine, GR3seqChainsDependenciesThroughTheSeller) {
    auto kb = fixtures::ab_deduced();
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& s : kb.instances_of(Concept::DependencyBetweenMISServices))
        edges.emplace(*objects_of(kb, Predicate::fromDependency, s).begin(), *objects_of(kb, Predicate::toDependency, s).begin());
    EXPECT_EQ(edges, (std::set<std::pair<std::string, std::string>>{{fixtures::kDepPurchase, fixtures::kDepProducts},
                                                                    {fixtures::kDepPurchase, fixtures::kDepInvoice}}));
}

TEST(Engine, GR4MatchesGoalToAbstractServices) {
    auto kb = fixtures::ab_deduced();
    EXPECT_EQ(objects_of(kb, Predicate::achievesAService, "goal__net__AB__buy_100_bolts"),
              (std::set<std::string>{"buy", "buy_over_internet", "buy_in_a_store"}));
}

TEST(Engine, GR4UsesTheWholeDescriptionWithoutSpaces) {
    auto kb = fixtures::seed_kb();
    kb.add_instance("g", "g", {Concept::CommonGoal});
    kb.assert_fact({"g", Predicate::description, Term::literal("SELL"), {}});
    kb.add_instance("g2", "g2", {Concept::CommonGoal});
    kb.assert_fact({"g2", Predicate::description, Term::literal(" leading space"), {}});
    run_to_fixpoint(kb, builtin_ruleset());
    EXPECT_EQ(objects_of(kb, Predicate::achievesAService, "g"),
              (std::set<std::string>{"sell_service", "sell_product", "sell_items_from_stock"}));
    EXPECT_TRUE(objects_of(kb, Predicate::achievesAService, "g2").empty());
}

TEST(Engine, GR5TopologyTable) {
    const std::map<std::pair<std::string, std::string>, std::string> expected{
        {{"central", "continuous"}, "star"}, {{"equal", "discontinuous"}, "P2P"}, {{"hierarchical", "continuous"}, "chain"}};
    for (const char* power : {"central", "equal", "hierarchical"})
        for (const char* duration : {"continuous", "discontinuous"}) {
            auto kb = topology_kb(power, duration);
            run_to_fixpoint(kb, builtin_ruleset());
            auto types = objects_of(kb, Predicate::hasType, "T");
            auto it = expected.find({power, duration});
            if (it == expected.end())
                EXPECT_TRUE(types.empty()) << power << "/" << duration;
            else
                EXPECT_EQ(types, std::set<std::string>{it->second}) << power << "/" << duration;
        }
}

TEST(Engine, FixpointIsIdempotent) {
    auto kb = fixtures::ab_deduced();
    auto before = kb;
    auto report = run_to_fixpoint(kb, builtin_ruleset());
    EXPECT_EQ(report.derived_count(), 0u);
    EXPECT_EQ(report.iterations, 1u);
    EXPECT_EQ(kb, before);
}

TEST(Engine, DeduceLeavesInputUntouched) {
    auto input = fixtures::ab_input();
    auto copy = input;
    auto d = deduce(input, builtin_ruleset());
    EXPECT_EQ(input, copy);
    EXPECT_EQ(d.kb, fixtures::ab_deduced());
    EXPECT_EQ(d.report.created_instances.size(), 5u);
}

TEST(Engine, IterationCapIsEnforced) {
    auto kb = fixtures::ab_input();
    FixpointOptions opts;
    opts.iteration_cap = 1;
    EXPECT_EQ(code_of([&] { run_to_fixpoint(kb, builtin_ruleset(), opts); }), ErrorCode::IterationCap);
}

TEST(Engine, OrderMustCoverTheRules) {
    auto kb = fixtures::ab_input();
    FixpointOptions opts;
    opts.order = {0, 1};
    EXPECT_EQ(code_of([&] { run_to_fixpoint(kb, builtin_ruleset(), opts); }), ErrorCode::MalformedRule);
}

TEST(Engine, EmptyKbDerivesNothing) {
    KnowledgeBase kb;
    auto report = run_to_fixpoint(kb, builtin_ruleset());
    EXPECT_EQ(report.derived_count(), 0u);
    EXPECT_EQ(kb.fact_count(), 0u);
}

TEST(Engine, EvaluateRuleIsPure) {
    auto kb = seller_a();
    auto before = kb;
    auto d = evaluate_rule(kb, rule("GR1a"));
    EXPECT_EQ(d.facts.size(), 3u);
    EXPECT_EQ(kb, before);
}

TEST(Engine, NaiveAndSemiNaiveAgreeOnFixture) {
    auto semi = fixtures::ab_deduced();
    auto naive = fixtures::ab_input();
    FixpointOptions opts;
    opts.semi_naive = false;
    run_to_fixpoint(naive, builtin_ruleset(), opts);
    EXPECT_EQ(oracle::from_kb(naive), oracle::from_kb(semi));
}

TEST(Engine, MatchesIndependentOracleOnFixture) {
    auto kb = fixtures::ab_deduced();
    auto expected = oracle::fixpoint(oracle::from_kb(fixtures::ab_input()), builtin_ruleset());
    EXPECT_EQ(oracle::from_kb(kb), expected);
}

TEST(Engine, ProvenanceNamesTheDerivingRule) {
    auto kb = fixtures::ab_deduced();
    for (const auto& f : kb.facts()) {
        if (!f.provenance.rule) continue;
        EXPECT_TRUE(kb.has_rule(*f.provenance.rule));
    }
    EXPECT_EQ(kb.provenance_of({"A", Predicate::provideAService, Term::id("sell_product")}), Provenance::derived("GR1a"));
    EXPECT_EQ(kb.provenance_of({"topology__net__AB", Predicate::hasType, Term::id("P2P")}), Provenance::derived("GR5b"));
}
