#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "elfstar/blockcodec.hpp"
#include "elfstar/ruleopt.hpp"
#include "testutil.hpp"

using namespace elfstar;

namespace {

CountDistribution make_cd(std::initializer_list<std::pair<int, uint64_t>> buckets) {
    CountDistribution cd;
    for (auto [i, c] : buckets) {
        for (uint64_t k = 0; k < c; ++k) {
            cd.add(i);
        }
    }
    return cd;
}

}  // namespace

TEST_CASE("approximate") {
    Rule gorilla = gorilla_lead_rule();
    CHECK(gorilla.approximate(40).value == 31);
    CHECK(gorilla.approximate(40).index == 31);

    Rule elf = default_lead_rule();
    CHECK(elf.approximate(13).value == 12);
    CHECK(elf.approximate(13).index == 2);
    CHECK(elf.approximate(8).value == 8);
    CHECK(elf.approximate(0).value == 0);
}

TEST_CASE("total cost endpoints") {
    CountDistribution cd = make_cd({{0, 4}, {5, 3}, {20, 2}});
    RuleCost single = total_cost(Rule{{0}}, cd);
    CHECK(single.c_pre == 0);
    CHECK(single.c_app == 5 * 3 + 20 * 2);

    Rule all;
    for (int i = 0; i < 64; ++i) {
        all.items.push_back(i);
    }
    RuleCost dense = total_cost(all, cd);
    CHECK(dense.c_app == 0);
    CHECK(dense.c_pre == 6 * cd.total());
}

TEST_CASE("skipping the 64-item length never helps") {
    // with c_0 = 0, cost(<0..63>) - cost(<0,2,..,62>) = c_2 + c_4 + ... + c_62
    std::mt19937_64 rng(17);
    for (int round = 0; round < 20; ++round) {
        CountDistribution cd;
        for (int i = 1; i < 64; ++i) {
            uint64_t c = rng() % 5;
            while (c--) {
                cd.add(i);
            }
        }
        if (cd.total() == 0) {
            continue;
        }
        Rule dense;
        Rule evens;
        for (int i = 0; i < 64; ++i) {
            dense.items.push_back(i);
            if (i % 2 == 0) {
                evens.items.push_back(i);
            }
        }
        uint64_t even_mass = 0;
        for (int i = 2; i <= 62; i += 2) {
            even_mass += cd.count(i);
        }
        CHECK(total_cost(dense, cd).c_total ==
              total_cost(evens, cd).c_total + even_mass);
    }
}

TEST_CASE("locally best rule on the worked example") {
    // zeros at 1-2, mass at {0, 3, 4}: z'=3 gives <0,3,4> at cost 0, the
    // fourth slot falls on the smallest zero bucket
    CountDistribution cd = make_cd({{0, 5}, {3, 3}, {4, 2}});
    auto [rule, capp] = local_app_rule(cd, 4);
    CHECK(rule.items == std::vector<int>{0, 1, 3, 4});
    CHECK(capp == 0);
}

TEST_CASE("locally best rule endpoints") {
    CountDistribution cd = make_cd({{0, 7}, {3, 5}, {9, 1}});
    auto [r1, c1] = local_app_rule(cd, 1);
    CHECK(r1.items == std::vector<int>{0});
    CHECK(c1 == 3 * 5 + 9 * 1);

    CountDistribution two = make_cd({{0, 2}, {3, 6}});
    auto [r2, c2] = local_app_rule(two, 2);
    CHECK(r2.items == std::vector<int>{0, 3});
    CHECK(c2 == 0);
}

TEST_CASE("global rule trivial cases") {
    CountDistribution zero_only = make_cd({{0, 42}});
    auto [rule, cost] = global_app_rule(zero_only);
    CHECK(rule.items == std::vector<int>{0});
    CHECK(cost.c_total == 0);

    CountDistribution empty;
    CHECK_THROWS_AS(global_app_rule(empty), std::invalid_argument);
}

TEST_CASE("brute force endpoints") {
    CountDistribution zero_only = make_cd({{0, 9}});
    auto [rule, cost] = brute_force_best_rule(zero_only, 8);
    CHECK(rule.items == std::vector<int>{0});
    CHECK(cost.c_total == 0);

    // all mass at index 1: one extra item costs a presentation bit per
    // record (2m) and saves only m, so <0> wins
    CountDistribution at_one = make_cd({{1, 10}});
    auto [r1, c1] = brute_force_best_rule(at_one, 8);
    CHECK(r1.items == std::vector<int>{0});
    CHECK(c1.c_total == 10);

    CountDistribution wide = make_cd({{20, 1}});
    CHECK_THROWS_AS(brute_force_best_rule(wide, 16), std::invalid_argument);
}

TEST_CASE("global equals brute force") {
    // the flat distribution from the derived example
    CountDistribution flat;
    for (int i = 0; i <= 7; ++i) {
        flat.add(i);
    }
    auto global = global_app_rule(flat);
    auto brute = brute_force_best_rule(flat, 8);
    CHECK(global.second.c_total == brute.second.c_total);

    // Fig-9-like distribution
    CountDistribution fig = make_cd({{0, 5}, {3, 3}, {4, 2}});
    CHECK(global_app_rule(fig).second.c_total ==
          brute_force_best_rule(fig, 8).second.c_total);

    std::mt19937_64 seeds(23);
    for (int round = 0; round < 200; ++round) {
        CountDistribution cd = testutil::random_distribution(0, 11, seeds());
        auto g = global_app_rule(cd);
        auto b = brute_force_best_rule(cd, 11);
        CHECK(g.second.c_total == b.second.c_total);
        CHECK(g.second.c_total == total_cost(g.first, cd).c_total);

        // per-length optimality of the DP
        for (int z = 1; z <= cd.nz() + 1; ++z) {
            auto [rule, capp] = local_app_rule(cd, z);
            CHECK(rule.z() == z);
            CHECK(capp == testutil::brute_min_capp_of_length(cd, 11, z));
            CHECK(capp == total_cost(rule, cd).c_app);
        }
    }
}

TEST_CASE("dominance over the fixed reference rules") {
    Rule gorilla = gorilla_lead_rule();
    Rule elf = default_lead_rule();
    std::mt19937_64 seeds(29);
    for (int round = 0; round < 300; ++round) {
        CountDistribution cd = testutil::random_distribution(0, 63, seeds());
        auto [rule, cost] = global_app_rule(cd);
        CHECK(cost.c_total <= total_cost(gorilla, cd).c_total);
        CHECK(cost.c_total <= total_cost(elf, cd).c_total);
    }
}

TEST_CASE("pruning changes nothing") {
    LocalRuleOptions off{false, false};
    LocalRuleOptions zero_only{true, false};
    LocalRuleOptions fr_only{false, true};
    std::mt19937_64 seeds(31);
    for (int round = 0; round < 2000; ++round) {
        CountDistribution cd = testutil::random_distribution(0, 63, seeds(), 50);
        int z = 1 + static_cast<int>(seeds() % 64);
        auto a = local_app_rule(cd, z);
        auto b = local_app_rule(cd, z, off);
        auto c = local_app_rule(cd, z, zero_only);
        auto d = local_app_rule(cd, z, fr_only);
        CHECK(a.second == b.second);
        CHECK(a.first.items == b.first.items);
        CHECK(a.second == c.second);
        CHECK(a.first.items == c.first.items);
        CHECK(a.second == d.second);
        CHECK(a.first.items == d.first.items);
    }
}

TEST_CASE("items land on nonzero buckets when they can") {
    std::mt19937_64 seeds(37);
    for (int round = 0; round < 300; ++round) {
        CountDistribution cd = testutil::random_distribution(0, 63, seeds());
        int nz = cd.nz();
        if (nz == 0) {
            continue;
        }
        int z = 1 + static_cast<int>(seeds() % nz);  // z - 1 <= nz
        auto [rule, capp] = local_app_rule(cd, z);
        for (size_t j = 1; j < rule.items.size(); ++j) {
            CHECK(cd.count(rule.items[j]) != 0);
        }
        // downward approximation, the property losslessness rides on
        for (int n = 0; n < 64; ++n) {
            CHECK(rule.approximate(n).value <= n);
        }
    }
}

TEST_CASE("contract violations") {
    CountDistribution cd = make_cd({{1, 1}});
    CHECK_THROWS_AS(local_app_rule(cd, 0), std::logic_error);
    CHECK_THROWS_AS(local_app_rule(cd, 65), std::logic_error);
    CountDistribution empty;
    CHECK_THROWS_AS(local_app_rule(empty, 4), std::invalid_argument);
}
