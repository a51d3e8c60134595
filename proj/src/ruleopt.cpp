#include "elfstar/ruleopt.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace elfstar {

namespace {
constexpr uint64_t kUnset = std::numeric_limits<uint64_t>::max();
}

bool Rule::valid() const {
    if (items.empty() || items.size() > 64 || items[0] != 0) {
        return false;
    }
    for (size_t i = 1; i < items.size(); ++i) {
        if (items[i] <= items[i - 1] || items[i] > 63) {
            return false;
        }
    }
    return true;
}

Rule::Approx Rule::approximate(int n) const {
    auto it = std::upper_bound(items.begin(), items.end(), n);
    int idx = static_cast<int>(it - items.begin()) - 1;
    return {idx, items[static_cast<size_t>(idx)]};
}

RuleCost total_cost(const Rule& rule, const CountDistribution& cd) {
    RuleCost cost;
    for (int i = 0; i < 64; ++i) {
        uint64_t ci = cd.count(i);
        if (ci != 0) {
            cost.c_app += ci * static_cast<uint64_t>(i - rule.approximate(i).value);
        }
    }
    cost.c_pre = cd.total() * static_cast<uint64_t>(rule.presentation_bits());
    cost.c_total = cost.c_app + cost.c_pre;
    return cost;
}

std::pair<Rule, uint64_t> local_app_rule(const CountDistribution& cd, int z,
                                         const LocalRuleOptions& opt) {
    if (z < 1 || z > 64) {
        throw std::logic_error("local_app_rule: z out of range");
    }
    if (cd.total() == 0) {
        throw std::invalid_argument("local_app_rule: empty distribution");
    }
    const auto& c = cd.counts();
    const int nz = cd.nz();
    const int zp = std::min(z, nz + 1);

    // Prefix sums make each state transition O(1):
    // s1[i] = sum_{p<=i} c_p, s2[i] = sum_{p<=i} c_p * p.
    uint64_t s1[64];
    uint64_t s2[64];
    s1[0] = c[0];
    s2[0] = 0;
    for (int i = 1; i < 64; ++i) {
        s1[i] = s1[i - 1] + c[static_cast<size_t>(i)];
        s2[i] = s2[i - 1] + c[static_cast<size_t>(i)] * static_cast<uint64_t>(i);
    }
    // sum_{p=k+1}^{hi} c_p * (p - k)
    auto span_cost = [&](int k, int hi) -> uint64_t {
        if (hi <= k) {
            return 0;
        }
        return (s2[hi] - s2[k]) - static_cast<uint64_t>(k) * (s1[hi] - s1[k]);
    };

    // dp[i][j]: minimal approximation cost over buckets <= i when a_j = i.
    // pre[i][j]: the item preceding a_j = i on that optimal chain.
    std::vector<uint64_t> dp(static_cast<size_t>(64 * zp), kUnset);
    std::vector<int> pre(static_cast<size_t>(64 * zp), -2);
    auto dp_at = [&](int i, int j) -> uint64_t& {
        return dp[static_cast<size_t>(i * zp + j)];
    };
    auto pre_at = [&](int i, int j) -> int& {
        return pre[static_cast<size_t>(i * zp + j)];
    };
    dp_at(0, 0) = 0;
    pre_at(0, 0) = -1;

    for (int i = 1; i <= 63; ++i) {
        if (opt.zero_pruning && c[static_cast<size_t>(i)] == 0) {
            continue;
        }
        int jmax = std::min(i, zp - 1);
        for (int j = 1; j <= jmax; ++j) {
            if (j == 1) {
                // a_1 = i: everything below falls back to a_0 = 0.
                dp_at(i, 1) = s2[i - 1];
                pre_at(i, 1) = 0;
                continue;
            }
            if (opt.front_rear_pruning &&
                (cd.f(i) < j || cd.r(i) < zp - 1 - j)) {
                continue;
            }
            uint64_t best = kUnset;
            int best_k = -2;
            for (int k = j - 1; k <= i - 1; ++k) {
                uint64_t prev = dp_at(k, j - 1);
                if (prev == kUnset) {
                    continue;
                }
                uint64_t cand = prev + span_cost(k, i - 1);
                if (cand < best) {
                    best = cand;
                    best_k = k;
                }
            }
            if (best_k != -2) {
                dp_at(i, j) = best;
                pre_at(i, j) = best_k;
            }
        }
    }

    // Close the chain: the last item k also absorbs all mass above it.
    uint64_t c_app = kUnset;
    int k_star = -1;
    for (int k = zp - 1; k <= 63; ++k) {
        uint64_t prev = dp_at(k, zp - 1);
        if (prev == kUnset) {
            continue;
        }
        uint64_t cand = prev + span_cost(k, 63);
        if (cand < c_app) {
            c_app = cand;
            k_star = k;
        }
    }
    assert(k_star >= 0);

    Rule rule;
    rule.items.reserve(static_cast<size_t>(z));
    for (int j = zp - 1; j >= 0; --j) {
        rule.items.push_back(k_star);
        k_star = pre_at(k_star, j);
    }
    assert(k_star == -1);
    std::reverse(rule.items.begin(), rule.items.end());

    if (rule.z() < z) {
        // Length adjustment: extra items go on zero-count buckets, smallest
        // index first, so the cost stays untouched.
        bool used[64] = {};
        for (int item : rule.items) {
            used[item] = true;
        }
        for (int i = 1; i <= 63 && rule.z() < z; ++i) {
            if (c[static_cast<size_t>(i)] == 0 && !used[i]) {
                rule.items.push_back(i);
                used[i] = true;
            }
        }
        assert(rule.z() == z);
        std::sort(rule.items.begin(), rule.items.end());
    }
    return {std::move(rule), c_app};
}

std::pair<Rule, RuleCost> global_app_rule(const CountDistribution& cd) {
    if (cd.total() == 0) {
        throw std::invalid_argument("global_app_rule: empty distribution");
    }
    const uint64_t total = cd.total();
    // ceil(log2(nz + 1)) == bit_width(nz)
    const int ln_cap = std::min(
        static_cast<int>(std::bit_width(static_cast<unsigned>(cd.nz()))), 5);

    Rule best;
    RuleCost best_cost;
    bool have = false;
    for (int ln = 0; ln <= ln_cap; ++ln) {
        uint64_t c_pre = total * static_cast<uint64_t>(ln);
        if (have && c_pre >= best_cost.c_total) {
            break;
        }
        auto [rule, c_app] = local_app_rule(cd, 1 << ln);
        uint64_t c_total = c_app + c_pre;
        if (!have || c_total < best_cost.c_total) {
            best = std::move(rule);
            best_cost = {c_app, c_pre, c_total};
            have = true;
        }
    }
    return {std::move(best), best_cost};
}

std::pair<Rule, RuleCost> brute_force_best_rule(const CountDistribution& cd,
                                                int max_index) {
    if (max_index < 1 || max_index > 16) {
        throw std::logic_error("brute_force_best_rule: max_index out of [1, 16]");
    }
    for (int i = max_index + 1; i < 64; ++i) {
        if (cd.count(i) != 0) {
            throw std::invalid_argument(
                "brute_force_best_rule: support exceeds max_index");
        }
    }
    if (cd.total() == 0) {
        throw std::invalid_argument("brute_force_best_rule: empty distribution");
    }

    Rule best;
    RuleCost best_cost;
    bool have = false;
    const uint32_t limit = uint32_t(1) << max_index;
    for (uint32_t mask = 0; mask < limit; ++mask) {
        int items[17];
        int z = 0;
        items[z++] = 0;
        for (int i = 1; i <= max_index; ++i) {
            if (mask & (uint32_t(1) << (i - 1))) {
                items[z++] = i;
            }
        }
        // Plain definition of the cost, kept free of the DP machinery.
        uint64_t c_app = 0;
        int slot = 0;
        for (int i = 0; i <= max_index; ++i) {
            while (slot + 1 < z && items[slot + 1] <= i) {
                ++slot;
            }
            c_app += cd.count(i) * static_cast<uint64_t>(i - items[slot]);
        }
        uint64_t c_pre =
            cd.total() * static_cast<uint64_t>(std::bit_width(static_cast<unsigned>(z - 1)));
        uint64_t c_total = c_app + c_pre;
        if (!have || c_total < best_cost.c_total) {
            best.items.assign(items, items + z);
            best_cost = {c_app, c_pre, c_total};
            have = true;
        }
    }
    return {std::move(best), best_cost};
}

}  // namespace elfstar
