#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "elfstar/distrib.hpp"

namespace elfstar {

// An approximation rule: strictly increasing items in [0, 63] with an
// implicit-by-convention leading 0. A zero count n is approximated down to
// the largest item <= n, which costs n - item extra stored bits per record
// and ceil(log2(z)) index bits to name the item.
struct Rule {
    std::vector<int> items;

    int z() const { return static_cast<int>(items.size()); }
    int presentation_bits() const {
        return std::bit_width(static_cast<unsigned>(items.size() - 1));
    }
    bool valid() const;

    struct Approx {
        int index;
        int value;
    };
    // Largest item <= n; always defined because items[0] == 0.
    Approx approximate(int n) const;

    bool operator==(const Rule&) const = default;
};

struct RuleCost {
    uint64_t c_app = 0;
    uint64_t c_pre = 0;
    uint64_t c_total = 0;
};

// Cost of using `rule` against the distribution, per the additive model:
// c_app = sum c_i * (i - App(i)), c_pre = total * presentation_bits.
RuleCost total_cost(const Rule& rule, const CountDistribution& cd);

// Test hooks: the pruning strategies are sound, so disabling them must not
// change any output.
struct LocalRuleOptions {
    bool zero_pruning = true;
    bool front_rear_pruning = true;
};

// Cheapest rule with exactly z items (minimal c_app among all length-z
// rules). The DP runs at length min(z, nz + 1); when z exceeds that, the
// rule is padded with the smallest unused zero-count indices, which cannot
// change the cost. Requires cd.total() > 0 and z in [1, 64].
std::pair<Rule, uint64_t> local_app_rule(const CountDistribution& cd, int z,
                                         const LocalRuleOptions& opt = {});

// Cheapest rule of any length. Only power-of-two lengths up to 2^5 need
// trying: padding a rule to the next power of two never raises its cost,
// and a 32-item rule always beats 64 items. Enumeration stops early once
// the presentation cost alone reaches the best total seen.
std::pair<Rule, RuleCost> global_app_rule(const CountDistribution& cd);

// Exhaustive oracle: exact minimum-cost rule over every subset of
// [1, max_index] plus the mandatory 0. Requires the distribution's support
// above index 0 to fit inside [1, max_index], max_index <= 16.
std::pair<Rule, RuleCost> brute_force_best_rule(const CountDistribution& cd,
                                                int max_index);

}  // namespace elfstar
