#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cbp/engine.hpp"
#include "cbp/ruleset.hpp"
#include "support/fixtures.hpp"
#include "support/naive_oracle.hpp"
#include "support/random_kb.hpp"

using namespace cbp;

namespace {

constexpr int kKbs = 120;
constexpr int kOrders = 6;

std::vector<std::size_t> shuffled_order(std::mt19937& rng, std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

}  // namespace

TEST(Confluence, RuleOrderDoesNotChangeTheFixpoint) {
    const auto& rules = builtin_ruleset();
    std::mt19937 rng(20261018);
    std::size_t nonempty = 0;
    for (int k = 0; k < kKbs; ++k) {
        auto input = oracle::random_kb(rng);
        auto expected = oracle::fixpoint(oracle::from_kb(input), rules);
        auto base = deduce(input, rules).kb;
        ASSERT_EQ(oracle::from_kb(base), expected) << "kb " << k;
        if (base.fact_count() > input.fact_count()) ++nonempty;
        for (int o = 0; o < kOrders; ++o) {
            FixpointOptions opts;
            opts.order = shuffled_order(rng, rules.size());
            auto got = deduce(input, rules, opts).kb;
            ASSERT_EQ(oracle::from_kb(got), expected) << "kb " << k << " order " << o;
        }
    }
    // Guard against a generator that never fires any rule.
    EXPECT_GT(nonempty, static_cast<std::size_t>(kKbs / 2));
}

TEST(Confluence, NaiveAndSemiNaiveAgree) {
    const auto& rules = builtin_ruleset();
    std::mt19937 rng(7);
    for (int k = 0; k < kKbs; ++k) {
        auto input = oracle::random_kb(rng);
        FixpointOptions naive;
        naive.semi_naive = false;
        naive.order = shuffled_order(rng, rules.size());
        EXPECT_EQ(oracle::from_kb(deduce(input, rules, naive).kb), oracle::from_kb(deduce(input, rules).kb)) << "kb " << k;
    }
}

TEST(Confluence, FixtureUnderEveryRotation) {
    const auto& rules = builtin_ruleset();
    auto input = fixtures::ab_input();
    auto expected = oracle::from_kb(fixtures::ab_deduced());
    for (std::size_t shift = 0; shift < rules.size(); ++shift) {
        FixpointOptions opts;
        opts.order.resize(rules.size());
        std::iota(opts.order.begin(), opts.order.end(), 0);
        std::rotate(opts.order.begin(), opts.order.begin() + static_cast<long>(shift), opts.order.end());
        EXPECT_EQ(oracle::from_kb(deduce(input, rules, opts).kb), expected) << "shift " << shift;
        std::reverse(opts.order.begin(), opts.order.end());
        EXPECT_EQ(oracle::from_kb(deduce(input, rules, opts).kb), expected) << "reversed shift " << shift;
    }
}

TEST(Confluence, DeductionIsMonotone) {
    const auto& rules = builtin_ruleset();
    std::mt19937 rng(99);
    for (int k = 0; k < 50; ++k) {
        auto input = oracle::random_kb(rng);
        auto out = deduce(input, rules).kb;
        auto in_facts = oracle::from_kb(input);
        auto out_facts = oracle::from_kb(out);
        EXPECT_TRUE(std::includes(out_facts.begin(), out_facts.end(), in_facts.begin(), in_facts.end())) << "kb " << k;
        for (const auto& f : input.facts()) EXPECT_EQ(out.provenance_of(f.triple()), Provenance::asserted());
    }
}
