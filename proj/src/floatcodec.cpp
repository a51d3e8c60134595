#include "elfstar/floatcodec.hpp"

#include <bit>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "elfstar/error.hpp"

namespace elfstar {

namespace {

constexpr uint64_t to_bits(double v) { return std::bit_cast<uint64_t>(v); }
constexpr double from_bits(uint64_t b) { return std::bit_cast<double>(b); }

// ceil(alpha * log2(10)) for alpha in [1, 14]; none of these products come
// near an integer, so the table is exact.
constexpr int kCeilAlphaLog2Ten[15] = {0,  4,  7,  10, 14, 17, 20, 24,
                                       27, 30, 34, 37, 40, 44, 47};

int ceil_alpha_log2_ten(int alpha) {
    if (alpha >= 1 && alpha <= 14) {
        return kCeilAlphaLog2Ten[alpha];
    }
    return static_cast<int>(std::ceil(alpha * 3.321928094887362));
}

// Digits of the shortest round-trip decimal form, as positions in the
// positional expansion: the leading digit sits at 10^first_pos, the last
// at 10^last_pos.
struct ShortestDecimal {
    char digits[24];
    int ndigits;
    int first_pos;
    int last_pos;
};

ShortestDecimal shortest_decimal(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
    ShortestDecimal out{};
    const char* p = buf;
    if (*p == '-') {
        ++p;
    }
    while (p != res.ptr && *p != 'e') {
        if (*p != '.') {
            out.digits[out.ndigits++] = *p;
        }
        ++p;
    }
    int exp10 = 0;
    ++p;  // skip 'e'
    bool neg_exp = (*p == '-');
    if (*p == '+' || *p == '-') {
        ++p;
    }
    std::from_chars(p, res.ptr, exp10);
    if (neg_exp) {
        exp10 = -exp10;
    }
    out.first_pos = exp10;
    out.last_pos = exp10 - (out.ndigits - 1);
    return out;
}

}  // namespace

int erasable_bits(double v, int alpha) {
    if (!std::isfinite(v) || v == 0.0 || alpha < 1) {
        throw std::logic_error("erasable_bits: needs finite nonzero v, alpha >= 1");
    }
    return 52 - (ceil_alpha_log2_ten(alpha) + std::ilogb(std::fabs(v)));
}

DecimalMeta decimal_meta(double v) {
    DecimalMeta meta;
    if (!std::isfinite(v) || v == 0.0) {
        return meta;  // beta = 0 for zero; non-finite stays on the raw path
    }
    ShortestDecimal dec = shortest_decimal(v);
    // Definition over DF(v) = +-(d_{h-1}..d_0 . d_{-1}..d_l): the format
    // always carries d_{-1}, so integral values still get alpha = 1.
    int l = dec.last_pos < -1 ? dec.last_pos : -1;
    meta.alpha = -l;
    meta.beta = dec.first_pos + 1 - l;
    meta.erasable_bits = erasable_bits(v, meta.alpha);
    if (meta.alpha <= kMaxAlpha && meta.beta <= kMaxBeta &&
        meta.erasable_bits > kEraseThreshold) {
        assert(meta.erasable_bits <= 52);
        uint64_t mask = (uint64_t(1) << meta.erasable_bits) - 1;
        // Erase only if it actually clears a set bit; the restore step
        // assumes a strictly positive delta.
        meta.erased = (to_bits(v) & mask) != 0;
    }
    return meta;
}

EraseResult erase(double v) {
    DecimalMeta meta = decimal_meta(v);
    if (!meta.erased) {
        return {v, meta};
    }
    uint64_t mask = (uint64_t(1) << meta.erasable_bits) - 1;
    return {from_bits(to_bits(v) & ~mask), meta};
}

double restore(double v_prime, int alpha) {
    if (v_prime == 0.0) {
        return v_prime;
    }
    if (alpha < 1 || alpha > kMaxAlpha) {
        throw std::logic_error("restore: alpha out of range");
    }
    if (!std::isfinite(v_prime)) {
        throw decode_error("restore: non-finite erased value");
    }

    // 17 significant digits pin the double exactly; the margin between an
    // erased value and the next multiple of 10^-alpha is wider than the
    // formatting error, so truncation in digit space is safe.
    double mag = std::fabs(v_prime);
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof buf, mag, std::chars_format::scientific, 16);
    char digits[17];
    int nd = 0;
    const char* p = buf;
    while (p != res.ptr && *p != 'e') {
        if (*p != '.') {
            digits[nd++] = *p;
        }
        ++p;
    }
    int exp10 = 0;
    ++p;
    bool neg_exp = (*p == '-');
    if (*p == '+' || *p == '-') {
        ++p;
    }
    std::from_chars(p, res.ptr, exp10);
    if (neg_exp) {
        exp10 = -exp10;
    }

    // Positional workspace from the highest digit down to 10^-alpha;
    // positions outside the 17 formatted digits are zero.
    int high = exp10 > 0 ? exp10 : 0;
    std::string ws(static_cast<size_t>(high + alpha + 1), '0');
    for (int i = 0; i < nd; ++i) {
        int pos = exp10 - i;  // digit i weighs 10^pos
        if (pos <= high && pos >= -alpha) {
            ws[static_cast<size_t>(high - pos)] = digits[i];
        }
    }
    // Truncation happened implicitly (positions below -alpha never copied);
    // now add 10^-alpha with decimal carry.
    int idx = high + alpha;
    for (; idx >= 0; --idx) {
        if (ws[static_cast<size_t>(idx)] != '9') {
            ws[static_cast<size_t>(idx)]++;
            break;
        }
        ws[static_cast<size_t>(idx)] = '0';
    }
    if (idx < 0) {
        ws.insert(ws.begin(), '1');
        ++high;
    }

    std::string text = ws.substr(0, static_cast<size_t>(high + 1));
    text += '.';
    text += ws.substr(static_cast<size_t>(high + 1));
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    if (std::signbit(v_prime)) {
        out = -out;
    }

    // Re-erasing the result must reproduce v_prime bit for bit; anything
    // else means the stream did not come from the erasing path.
    EraseResult check = erase(out);
    if (!check.meta.erased || to_bits(check.value) != to_bits(v_prime)) {
        throw decode_error("restore: verification against re-erase failed");
    }
    return out;
}

}  // namespace elfstar
