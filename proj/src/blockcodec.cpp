#include "elfstar/blockcodec.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstring>
#include <stdexcept>

#include "elfstar/distrib.hpp"
#include "elfstar/error.hpp"
#include "elfstar/floatcodec.hpp"

namespace elfstar {

namespace {

constexpr uint64_t to_bits(double v) { return std::bit_cast<uint64_t>(v); }
constexpr double from_bits(uint64_t b) { return std::bit_cast<double>(b); }

void put_u32le(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 24));
}

void put_u64le(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
}

uint32_t get_u32le(std::span<const uint8_t> b, size_t at) {
    return static_cast<uint32_t>(b[at]) | (static_cast<uint32_t>(b[at + 1]) << 8) |
           (static_cast<uint32_t>(b[at + 2]) << 16) |
           (static_cast<uint32_t>(b[at + 3]) << 24);
}

uint64_t get_u64le(std::span<const uint8_t> b, size_t at) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | b[at + static_cast<size_t>(i)];
    }
    return v;
}

}  // namespace

const Rule& default_lead_rule() {
    static const Rule rule{{0, 8, 12, 16, 18, 20, 22, 24}};
    return rule;
}

const Rule& default_trail_rule() {
    static const Rule rule{{0, 16, 24, 30, 34, 38, 42, 46}};
    return rule;
}

const Rule& gorilla_lead_rule() {
    static const Rule rule = [] {
        Rule r;
        for (int i = 0; i < 32; ++i) {
            r.items.push_back(i);
        }
        return r;
    }();
    return rule;
}

bool should_share(int lead, int trail, int stored_lead, int stored_trail,
                  int ln, int tn, ShareMode mode) {
    if (mode == ShareMode::kLegacyC) {
        return lead == stored_lead && trail >= stored_trail;
    }
    return lead >= stored_lead && trail >= stored_trail &&
           (lead - stored_lead) + (trail - stored_trail) < 1 + ln + tn;
}

void write_rule(BitSink& sink, const Rule& rule) {
    int ln = rule.presentation_bits();
    if (!rule.valid() || rule.z() != (1 << ln) || rule.z() > 32) {
        throw std::logic_error("write_rule: rule is not wire-canonical");
    }
    sink.write_bits(static_cast<uint64_t>(ln), 3);
    for (int j = 1; j < rule.z(); ++j) {
        sink.write_bits(static_cast<uint64_t>(rule.items[static_cast<size_t>(j)]), 6);
    }
}

Rule read_rule(BitSource& src) {
    int ln = static_cast<int>(src.read_bits(3));
    if (ln > 5) {
        throw decode_error("rule length field out of range", src.cursor());
    }
    Rule rule;
    rule.items.push_back(0);
    int prev = 0;
    for (int j = 1; j < (1 << ln); ++j) {
        int item = static_cast<int>(src.read_bits(6));
        if (item <= prev) {
            throw decode_error("rule items not strictly increasing", src.cursor());
        }
        rule.items.push_back(item);
        prev = item;
    }
    return rule;
}

Rule pad_rule_pow2(Rule rule) {
    if (!rule.valid()) {
        throw std::logic_error("pad_rule_pow2: invalid rule");
    }
    int target = 1 << rule.presentation_bits();
    if (target > 32) {
        throw std::logic_error("pad_rule_pow2: rule longer than 32 items");
    }
    if (rule.z() == target) {
        return rule;
    }
    bool used[64] = {};
    for (int item : rule.items) {
        used[item] = true;
    }
    for (int i = 1; i < 64 && rule.z() < target; ++i) {
        if (!used[i]) {
            rule.items.push_back(i);
            used[i] = true;
        }
    }
    std::sort(rule.items.begin(), rule.items.end());
    return rule;
}

void encode_value(EncoderState& state, BitSink& sink, double v,
                  const BlockHeader& header, ShareMode mode) {
    EraseResult er = erase(v);
    sink.write_bit(er.meta.erased);
    if (er.meta.erased) {
        bool same = er.meta.alpha == state.prev_alpha;
        sink.write_bit(same);
        if (!same) {
            sink.write_bits(static_cast<uint64_t>(er.meta.alpha), 4);
            state.prev_alpha = er.meta.alpha;
        }
    }

    uint64_t bits = to_bits(er.value);
    uint64_t x = bits ^ state.prev_bits;
    if (x == 0) {
        sink.write_bits(0b01, 2);
    } else {
        int lead = count_lead(x);
        int trail = count_trail(x);
        int ln = header.lead_rule.presentation_bits();
        int tn = header.trail_rule.presentation_bits();
        if (should_share(lead, trail, state.stored_lead, state.stored_trail, ln,
                         tn, mode)) {
            sink.write_bit(true);
            unsigned center =
                static_cast<unsigned>(64 - state.stored_lead - state.stored_trail);
            sink.write_bits(x >> state.stored_trail, center);
        } else {
            sink.write_bits(0b00, 2);
            Rule::Approx la = header.lead_rule.approximate(lead);
            Rule::Approx ta = header.trail_rule.approximate(trail);
            sink.write_bits(static_cast<uint64_t>(la.index), static_cast<unsigned>(ln));
            sink.write_bits(static_cast<uint64_t>(ta.index), static_cast<unsigned>(tn));
            unsigned center = static_cast<unsigned>(64 - la.value - ta.value);
            sink.write_bits(x >> ta.value, center);
            state.stored_lead = la.value;
            state.stored_trail = ta.value;
        }
    }
    state.prev_bits = bits;
}

double decode_value(EncoderState& state, BitSource& src,
                    const BlockHeader& header) {
    bool erased = src.read_bit();
    if (erased) {
        bool same = src.read_bit();
        if (!same) {
            int alpha = static_cast<int>(src.read_bits(4));
            if (alpha < 1 || alpha > kMaxAlpha) {
                throw decode_error("alpha field out of range", src.cursor());
            }
            state.prev_alpha = alpha;
        } else if (state.prev_alpha < 0) {
            throw decode_error("same-alpha flag before any alpha", src.cursor());
        }
    }

    uint64_t x;
    if (src.read_bit()) {  // '1': reuse the stored window
        unsigned center =
            static_cast<unsigned>(64 - state.stored_lead - state.stored_trail);
        x = src.read_bits(center) << state.stored_trail;
    } else if (src.read_bit()) {  // '01': zero xor
        x = 0;
    } else {  // '00': fresh window
        int ln = header.lead_rule.presentation_bits();
        int tn = header.trail_rule.presentation_bits();
        auto li = src.read_bits(static_cast<unsigned>(ln));
        auto ti = src.read_bits(static_cast<unsigned>(tn));
        if (li >= static_cast<uint64_t>(header.lead_rule.z()) ||
            ti >= static_cast<uint64_t>(header.trail_rule.z())) {
            throw decode_error("rule index out of range", src.cursor());
        }
        int lead = header.lead_rule.items[static_cast<size_t>(li)];
        int trail = header.trail_rule.items[static_cast<size_t>(ti)];
        if (lead + trail > 63) {
            throw decode_error("lead/trail window larger than a word", src.cursor());
        }
        unsigned center = static_cast<unsigned>(64 - lead - trail);
        x = src.read_bits(center) << trail;
        state.stored_lead = lead;
        state.stored_trail = trail;
    }

    uint64_t bits = x ^ state.prev_bits;
    state.prev_bits = bits;
    double raw = from_bits(bits);
    return erased ? restore(raw, state.prev_alpha) : raw;
}

std::vector<uint8_t> compress_block(std::span<const double> values,
                                    const CodecConfig& config) {
    if (values.empty()) {
        throw std::invalid_argument("compress_block: empty input");
    }
    if (values.size() > 0xFFFFFFFFull) {
        throw std::invalid_argument("compress_block: too many values for one block");
    }

    BlockHeader header;
    header.value_count = static_cast<uint32_t>(values.size());
    if (config.rule_mode == RuleMode::kAdaptive) {
        // Pass 1: erase everything, walk the XOR chain, gather both zero
        // count distributions in one sweep.
        CountDistribution lead_cd;
        CountDistribution trail_cd;
        uint64_t prev = 0;
        for (double v : values) {
            uint64_t bits = to_bits(erase(v).value);
            uint64_t x = bits ^ prev;
            if (x != 0) {
                lead_cd.add(count_lead(x));
                trail_cd.add(count_trail(x));
            }
            prev = bits;
        }
        header.lead_rule =
            lead_cd.total() == 0 ? Rule{{0}} : global_app_rule(lead_cd).first;
        header.trail_rule =
            trail_cd.total() == 0 ? Rule{{0}} : global_app_rule(trail_cd).first;
    } else {
        header.lead_rule = pad_rule_pow2(config.fixed_lead_rule);
        header.trail_rule = pad_rule_pow2(config.fixed_trail_rule);
    }

    BitSink sink;
    sink.write_bits(header.value_count, 32);
    write_rule(sink, header.lead_rule);
    write_rule(sink, header.trail_rule);
    EncoderState state;
    for (double v : values) {
        encode_value(state, sink, v, header, config.share_mode);
    }
    return sink.take_bytes();
}

std::vector<double> decompress_block(std::span<const uint8_t> payload) {
    BitSource src(payload);
    auto count = static_cast<uint32_t>(src.read_bits(32));
    if (count == 0) {
        throw decode_error("block with zero value count", src.cursor());
    }
    BlockHeader header;
    header.value_count = count;
    header.lead_rule = read_rule(src);
    header.trail_rule = read_rule(src);

    EncoderState state;
    std::vector<double> out;
    out.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
        out.push_back(decode_value(state, src, header));
    }
    return out;
}

void write_container_header(std::vector<uint8_t>& out, const ContainerInfo& info) {
    out.push_back('E');
    out.push_back('L');
    out.push_back('F');
    out.push_back('S');
    out.push_back(0x01);
    out.push_back(info.mode);
    put_u32le(out, info.block_size);
    put_u64le(out, info.value_count);
}

ContainerInfo read_container_header(std::span<const uint8_t> bytes) {
    if (bytes.size() < kContainerHeaderSize) {
        throw decode_error("container shorter than its header");
    }
    if (std::memcmp(bytes.data(), "ELFS", 4) != 0) {
        throw decode_error("bad magic");
    }
    if (bytes[4] != 0x01) {
        throw decode_error("unsupported version", 4 * 8);
    }
    ContainerInfo info;
    info.mode = bytes[5];
    if (info.mode != kModeBatch && info.mode != kModeStream) {
        throw decode_error("unknown mode byte", 5 * 8);
    }
    info.block_size = get_u32le(bytes, 6);
    if (info.block_size == 0) {
        throw decode_error("zero block size", 6 * 8);
    }
    info.value_count = get_u64le(bytes, 10);
    return info;
}

std::vector<uint8_t> compress_batch(std::span<const double> values,
                                    uint32_t block_size,
                                    const CodecConfig& config) {
    if (values.empty()) {
        throw std::invalid_argument("compress_batch: empty input");
    }
    if (block_size == 0) {
        throw std::invalid_argument("compress_batch: zero block size");
    }
    std::vector<uint8_t> out;
    write_container_header(
        out, {kModeBatch, block_size, static_cast<uint64_t>(values.size())});
    for (size_t at = 0; at < values.size(); at += block_size) {
        size_t n = std::min<size_t>(block_size, values.size() - at);
        std::vector<uint8_t> payload =
            compress_block(values.subspan(at, n), config);
        put_u32le(out, static_cast<uint32_t>(payload.size()));
        out.insert(out.end(), payload.begin(), payload.end());
    }
    return out;
}

std::vector<double> decompress_batch(std::span<const uint8_t> container) {
    ContainerInfo info = read_container_header(container);
    if (info.mode != kModeBatch) {
        throw decode_error("not a batch container", 5 * 8);
    }
    if (info.value_count == 0) {
        throw decode_error("container declares zero values", 10 * 8);
    }
    std::vector<double> out;
    out.reserve(info.value_count);
    size_t at = kContainerHeaderSize;
    while (out.size() < info.value_count) {
        if (at + 4 > container.size()) {
            throw decode_error("missing block length prefix", at * 8);
        }
        uint32_t len = get_u32le(container, at);
        at += 4;
        if (at + len > container.size()) {
            throw decode_error("block payload extends past container", at * 8);
        }
        std::vector<double> block = decompress_block(container.subspan(at, len));
        if (block.size() > info.value_count - out.size()) {
            throw decode_error("more values than the container declares", at * 8);
        }
        out.insert(out.end(), block.begin(), block.end());
        at += len;
    }
    if (at != container.size()) {
        throw decode_error("trailing bytes after last block", at * 8);
    }
    return out;
}

}  // namespace elfstar
