#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace elfstar {

// Number of leading zero bits of a nonzero word, in [0, 63]. Zero words are
// excluded from the distributions and rejected here.
inline int count_lead(uint64_t x) {
    if (x == 0) {
        throw std::logic_error("count_lead: zero word");
    }
    return std::countl_zero(x);
}

inline int count_trail(uint64_t x) {
    if (x == 0) {
        throw std::logic_error("count_trail: zero word");
    }
    return std::countr_zero(x);
}

// 64-bucket count distribution of leading (or trailing) zero counts, plus
// the derived tables the rule optimizer prunes with:
//   nz    - nonzero buckets among c_1..c_63 (c_0 deliberately excluded)
//   f_j   - nonzero buckets among c_1..c_j
//   r_j   - nonzero buckets among c_{j+1}..c_63
class CountDistribution {
public:
    void add(int k) {
        if (k < 0 || k > 63) {
            throw std::logic_error("CountDistribution::add: bucket out of range");
        }
        ++c_[static_cast<size_t>(k)];
        ++total_;
        dirty_ = true;
    }

    void merge(const CountDistribution& other) {
        for (size_t i = 0; i < 64; ++i) {
            c_[i] += other.c_[i];
        }
        total_ += other.total_;
        dirty_ = true;
    }

    void clear() {
        c_.fill(0);
        total_ = 0;
        dirty_ = true;
    }

    uint64_t count(int i) const { return c_[static_cast<size_t>(i)]; }
    const std::array<uint64_t, 64>& counts() const { return c_; }
    uint64_t total() const { return total_; }

    int nz() const {
        refresh();
        return nz_;
    }
    // f(j)/r(j) are defined for j in [1, 63].
    int f(int j) const {
        refresh();
        return f_[static_cast<size_t>(j)];
    }
    int r(int j) const {
        refresh();
        return r_[static_cast<size_t>(j)];
    }

private:
    void refresh() const {
        if (!dirty_) {
            return;
        }
        int seen = 0;
        for (int j = 1; j <= 63; ++j) {
            if (c_[static_cast<size_t>(j)] != 0) {
                ++seen;
            }
            f_[static_cast<size_t>(j)] = seen;
        }
        nz_ = seen;
        for (int j = 1; j <= 63; ++j) {
            r_[static_cast<size_t>(j)] = nz_ - f_[static_cast<size_t>(j)];
        }
        dirty_ = false;
    }

    std::array<uint64_t, 64> c_{};
    uint64_t total_ = 0;
    mutable std::array<int, 64> f_{};
    mutable std::array<int, 64> r_{};
    mutable int nz_ = 0;
    mutable bool dirty_ = true;
};

}  // namespace elfstar
