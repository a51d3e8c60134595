#pragma once

#include <cstdint>

namespace elfstar {

// Decimal-format metadata of a double: alpha is the decimal place count
// (fractional digits of the shortest round-trip representation, at least 1
// for finite nonzero values), beta the decimal significand count.
struct DecimalMeta {
    int alpha = 0;
    int beta = 0;
    int erasable_bits = 0;  // may be <= 0: nothing worth erasing
    bool erased = false;
};

// Precision bounds of the erased path. Values outside take the raw path.
inline constexpr int kMaxAlpha = 14;
inline constexpr int kMaxBeta = 15;
// Erasing pays only when strictly more than this many bits go away.
inline constexpr int kEraseThreshold = 4;

// Computes alpha/beta from the shortest round-trip decimal form of v and
// decides erasability. Non-finite values and v = 0 are never erased.
DecimalMeta decimal_meta(double v);

// 52 - (ceil(alpha*log2(10)) + floor(log2(|v|))): the number of low mantissa
// bits that can be zeroed while staying within 10^-alpha of v.
// Requires v finite and nonzero, alpha >= 1.
int erasable_bits(double v, int alpha);

struct EraseResult {
    double value;  // low bits zeroed when meta.erased, otherwise v unchanged
    DecimalMeta meta;
};

// Zeroes the low erasable bits of v when the gate passes (alpha/beta caps,
// threshold, at least one erased bit set). Sign and exponent are untouched.
EraseResult erase(double v);

// Inverse of erase for a value erased with this alpha: truncates the decimal
// expansion after the alpha-th fractional digit and adds 10^-alpha, all in
// decimal-digit space to avoid binary double-rounding. restore(0, a) = 0.
double restore(double v_prime, int alpha);

}  // namespace elfstar
