#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "elfstar/blockcodec.hpp"
#include "elfstar/distrib.hpp"

// Streaming codec: tumbling windows of w values over one unbroken XOR
// chain. Each window opens with a single rule flag bit; when the previous
// window compressed worse than the one before it (delta = cr_{i-1} - cr_i
// < 0), both rules are recomputed from the last window's distributions and
// serialized behind the flag. Window 0 runs on built-in default rules, and
// the window after it always recomputes (there is no ratio to compare yet).

namespace elfstar {

class StreamEncoder {
public:
    explicit StreamEncoder(uint32_t window_size = 1000,
                           ShareMode share_mode = ShareMode::kAdaptiveCPrime);

    // Encodes one value under the active rules and does the window
    // bookkeeping at boundaries.
    void feed(double v);

    // Flushes the partial window and returns the finished container.
    // Requires at least one fed value; the encoder is unusable afterwards.
    std::vector<uint8_t> finish();

    size_t values_fed() const noexcept { return values_fed_; }
    // Number of windows that opened with freshly transmitted rules.
    int rule_refreshes() const noexcept { return rule_refreshes_; }

private:
    void open_window();
    void close_window();

    uint32_t window_size_;
    ShareMode share_mode_;
    BitSink sink_;
    EncoderState state_;
    BlockHeader active_;  // value_count unused; carries the active rules

    CountDistribution pending_lead_;
    CountDistribution pending_trail_;
    size_t window_start_bits_ = 0;
    uint32_t in_window_ = 0;
    uint64_t window_index_ = 0;
    double cr_prev_ = 0.0;
    bool refresh_next_ = false;
    Rule next_lead_;
    Rule next_trail_;

    size_t values_fed_ = 0;
    int rule_refreshes_ = 0;
    bool finished_ = false;
};

// Mirror of the encoder's window protocol.
class StreamDecoder {
public:
    struct WindowInfo {
        bool rules_changed;
        Rule lead_rule;
        Rule trail_rule;
        uint64_t value_count;
    };

    explicit StreamDecoder(std::span<const uint8_t> container);

    std::vector<double> read_all();
    const std::vector<WindowInfo>& windows() const noexcept { return windows_; }
    uint32_t window_size() const noexcept { return info_.block_size; }

private:
    ContainerInfo info_;
    std::vector<uint8_t> payload_;
    std::vector<WindowInfo> windows_;
};

std::vector<double> stream_decompress(std::span<const uint8_t> container);

// Mode-dispatching decompressor for both container kinds.
std::vector<double> decompress(std::span<const uint8_t> container);

}  // namespace elfstar
