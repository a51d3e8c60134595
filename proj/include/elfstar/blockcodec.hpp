#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "elfstar/bitio.hpp"
#include "elfstar/ruleopt.hpp"

// Batch block codec. One block is a self-contained bitstream:
//
//   value_count      32 bits
//   lead rule        3 bits of ln, then 2^ln - 1 ascending 6-bit items
//   trail rule       same layout
//   records          one per value, in order:
//     erased flag    1 bit
//     [if erased]    1 bit "alpha same as last transmitted", else 4 bits alpha
//     xor dispatch   '1'  -> center bits under the stored lead/trail window
//                    '01' -> xor is zero, nothing follows
//                    '00' -> lead index (ln bits), trail index (tn bits),
//                            center bits under the indexed window; the
//                            stored window is updated to the indexed one
//
// The container around blocks is byte-oriented:
//   "ELFS" | version 0x01 | mode (0x00 batch, 0x01 stream) |
//   u32le block/window size | u64le total value count |
//   repeated: u32le payload byte length | payload

namespace elfstar {

enum class RuleMode { kAdaptive, kFixed };
enum class ShareMode { kAdaptiveCPrime, kLegacyC };

// Reference rules used for fixed-rule encoding and as the first-window
// defaults of the streaming codec.
const Rule& default_lead_rule();
const Rule& default_trail_rule();
const Rule& gorilla_lead_rule();  // <0, 1, ..., 31>

struct CodecConfig {
    RuleMode rule_mode = RuleMode::kAdaptive;
    ShareMode share_mode = ShareMode::kAdaptiveCPrime;
    Rule fixed_lead_rule = default_lead_rule();
    Rule fixed_trail_rule = default_trail_rule();
};

struct BlockHeader {
    uint32_t value_count = 0;
    Rule lead_rule;
    Rule trail_rule;
};

// XOR-chain state shared between encoder and decoder. The decoder can only
// know the approximated lead/trail of the last '00' record, so that is what
// the stored window holds; '1' and '01' records leave it unchanged.
struct EncoderState {
    uint64_t prev_bits = 0;
    int stored_lead = 0;
    int stored_trail = 0;
    int prev_alpha = -1;  // -1: no alpha transmitted yet
};

// The sharing predicate deciding between the '1' and '00' paths.
// AdaptiveCPrime shares when the window still covers the new record and the
// wasted center bits stay below the 1 + ln + tn bits a fresh window costs;
// LegacyC requires an exactly matching lead.
bool should_share(int lead, int trail, int stored_lead, int stored_trail,
                  int ln, int tn, ShareMode mode);

// Wire form of a rule. Only power-of-two lengths up to 32 are
// representable; pad_rule_pow2 extends other rules with unused indices.
void write_rule(BitSink& sink, const Rule& rule);
Rule read_rule(BitSource& src);
Rule pad_rule_pow2(Rule rule);

void encode_value(EncoderState& state, BitSink& sink, double v,
                  const BlockHeader& header, ShareMode mode);
double decode_value(EncoderState& state, BitSource& src,
                    const BlockHeader& header);

// One block payload (no container framing). Round-trips bit-exactly.
std::vector<uint8_t> compress_block(std::span<const double> values,
                                    const CodecConfig& config = {});
std::vector<double> decompress_block(std::span<const uint8_t> payload);

inline constexpr uint8_t kModeBatch = 0x00;
inline constexpr uint8_t kModeStream = 0x01;
inline constexpr size_t kContainerHeaderSize = 18;

struct ContainerInfo {
    uint8_t mode = kModeBatch;
    uint32_t block_size = 0;
    uint64_t value_count = 0;
};

void write_container_header(std::vector<uint8_t>& out, const ContainerInfo& info);
// Parses and validates the fixed header; returns the payload area offset.
ContainerInfo read_container_header(std::span<const uint8_t> bytes);

// Whole-file batch compression: values cut into block_size chunks, each a
// length-prefixed block payload.
std::vector<uint8_t> compress_batch(std::span<const double> values,
                                    uint32_t block_size = 1000,
                                    const CodecConfig& config = {});
std::vector<double> decompress_batch(std::span<const uint8_t> container);

}  // namespace elfstar
