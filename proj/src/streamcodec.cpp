#include "elfstar/streamcodec.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "elfstar/error.hpp"
#include "elfstar/floatcodec.hpp"

namespace elfstar {

namespace {
void put_u32le(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 24));
}
}  // namespace

StreamEncoder::StreamEncoder(uint32_t window_size, ShareMode share_mode)
    : window_size_(window_size), share_mode_(share_mode) {
    if (window_size == 0) {
        throw std::invalid_argument("StreamEncoder: zero window size");
    }
    active_.lead_rule = default_lead_rule();
    active_.trail_rule = default_trail_rule();
}

void StreamEncoder::open_window() {
    window_start_bits_ = sink_.bit_len();
    if (window_index_ > 0 && refresh_next_) {
        sink_.write_bit(true);
        active_.lead_rule = next_lead_;
        active_.trail_rule = next_trail_;
        write_rule(sink_, active_.lead_rule);
        write_rule(sink_, active_.trail_rule);
        ++rule_refreshes_;
    } else {
        sink_.write_bit(false);
    }
    refresh_next_ = false;
}

void StreamEncoder::close_window() {
    double cr = static_cast<double>(sink_.bit_len() - window_start_bits_) /
                (64.0 * window_size_);
    // Window 0 always hands fresh rules to window 1; afterwards only a
    // deteriorating ratio does.
    if (window_index_ == 0 || cr_prev_ - cr < 0.0) {
        refresh_next_ = true;
        next_lead_ = pending_lead_.total() == 0
                         ? Rule{{0}}
                         : global_app_rule(pending_lead_).first;
        next_trail_ = pending_trail_.total() == 0
                          ? Rule{{0}}
                          : global_app_rule(pending_trail_).first;
    }
    cr_prev_ = cr;
    pending_lead_.clear();
    pending_trail_.clear();
    in_window_ = 0;
    ++window_index_;
}

void StreamEncoder::feed(double v) {
    if (finished_) {
        throw std::logic_error("StreamEncoder::feed after finish");
    }
    if (in_window_ == 0) {
        open_window();
    }
    uint64_t prev = state_.prev_bits;
    encode_value(state_, sink_, v, active_, share_mode_);
    uint64_t x = state_.prev_bits ^ prev;
    if (x != 0) {
        pending_lead_.add(count_lead(x));
        pending_trail_.add(count_trail(x));
    }
    ++values_fed_;
    if (++in_window_ == window_size_) {
        close_window();
    }
}

std::vector<uint8_t> StreamEncoder::finish() {
    if (finished_) {
        throw std::logic_error("StreamEncoder::finish called twice");
    }
    if (values_fed_ == 0) {
        throw std::logic_error("StreamEncoder::finish with no values");
    }
    finished_ = true;
    std::vector<uint8_t> out;
    write_container_header(out, {kModeStream, window_size_, values_fed_});
    std::vector<uint8_t> payload = sink_.take_bytes();
    put_u32le(out, static_cast<uint32_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

StreamDecoder::StreamDecoder(std::span<const uint8_t> container) {
    info_ = read_container_header(container);
    if (info_.mode != kModeStream) {
        throw decode_error("not a stream container", 5 * 8);
    }
    if (container.size() < kContainerHeaderSize + 4) {
        throw decode_error("missing stream payload length");
    }
    uint32_t len = static_cast<uint32_t>(container[kContainerHeaderSize]) |
                   (static_cast<uint32_t>(container[kContainerHeaderSize + 1]) << 8) |
                   (static_cast<uint32_t>(container[kContainerHeaderSize + 2]) << 16) |
                   (static_cast<uint32_t>(container[kContainerHeaderSize + 3]) << 24);
    size_t at = kContainerHeaderSize + 4;
    if (at + len != container.size()) {
        throw decode_error("stream payload length mismatch", at * 8);
    }
    if (info_.value_count == 0) {
        throw decode_error("empty stream payload");
    }
    payload_.assign(container.begin() + static_cast<ptrdiff_t>(at), container.end());
}

std::vector<double> StreamDecoder::read_all() {
    BitSource src(payload_);
    BlockHeader active;
    active.lead_rule = default_lead_rule();
    active.trail_rule = default_trail_rule();
    EncoderState state;

    std::vector<double> out;
    out.reserve(info_.value_count);
    uint64_t remaining = info_.value_count;
    while (remaining > 0) {
        bool changed = src.read_bit();
        if (changed) {
            active.lead_rule = read_rule(src);
            active.trail_rule = read_rule(src);
        }
        uint64_t take = std::min<uint64_t>(remaining, info_.block_size);
        for (uint64_t i = 0; i < take; ++i) {
            out.push_back(decode_value(state, src, active));
        }
        remaining -= take;
        windows_.push_back({changed, active.lead_rule, active.trail_rule, take});
    }
    return out;
}

std::vector<double> stream_decompress(std::span<const uint8_t> container) {
    StreamDecoder dec(container);
    return dec.read_all();
}

std::vector<double> decompress(std::span<const uint8_t> container) {
    ContainerInfo info = read_container_header(container);
    return info.mode == kModeBatch ? decompress_batch(container)
                                   : stream_decompress(container);
}

}  // namespace elfstar
