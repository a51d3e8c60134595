#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "elfstar/error.hpp"

namespace elfstar {

// Append-only bit writer over a growable byte buffer. Bits are packed
// MSB-first within each byte; the final partial byte is zero-padded.
class BitSink {
public:
    // Appends the `count` low-order bits of `value`, most significant of
    // those first. count must be in [0, 64]; higher bits of value are
    // ignored.
    void write_bits(uint64_t value, unsigned count) {
        if (count > 64) {
            throw std::logic_error("BitSink::write_bits: count > 64");
        }
        if (count == 0) {
            return;
        }
        if (count < 64) {
            value &= (uint64_t(1) << count) - 1;
        }
        while (count > 0) {
            unsigned used = bit_len_ & 7u;
            if (used == 0) {
                bytes_.push_back(0);
            }
            unsigned room = 8 - used;
            unsigned take = count < room ? count : room;
            uint8_t chunk = static_cast<uint8_t>((value >> (count - take)) &
                                                 ((uint64_t(1) << take) - 1));
            bytes_.back() |= static_cast<uint8_t>(chunk << (room - take));
            bit_len_ += take;
            count -= take;
        }
    }

    void write_bit(bool bit) { write_bits(bit ? 1 : 0, 1); }

    size_t bit_len() const noexcept { return bit_len_; }

    // The backing bytes; past-the-end bits of the last byte are zero.
    const std::vector<uint8_t>& bytes() const noexcept { return bytes_; }

    std::vector<uint8_t> take_bytes() {
        bit_len_ = 0;
        return std::move(bytes_);
    }

private:
    std::vector<uint8_t> bytes_;
    size_t bit_len_ = 0;
};

// Sequential bit reader, mirroring BitSink's MSB-first packing.
class BitSource {
public:
    explicit BitSource(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    // Returns the next `count` bits as the low-order bits of the result.
    uint64_t read_bits(unsigned count) {
        if (count > 64) {
            throw std::logic_error("BitSource::read_bits: count > 64");
        }
        if (cursor_ + count > bytes_.size() * 8) {
            throw decode_error("truncated stream", cursor_);
        }
        uint64_t out = 0;
        unsigned left = count;
        while (left > 0) {
            size_t byte_idx = cursor_ >> 3;
            unsigned bit_idx = cursor_ & 7u;
            unsigned avail = 8 - bit_idx;
            unsigned take = left < avail ? left : avail;
            uint8_t chunk = static_cast<uint8_t>(bytes_[byte_idx] >> (avail - take)) &
                            static_cast<uint8_t>((1u << take) - 1);
            out = (out << take) | chunk;
            cursor_ += take;
            left -= take;
        }
        return out;
    }

    bool read_bit() { return read_bits(1) != 0; }

    size_t cursor() const noexcept { return cursor_; }
    size_t total_bits() const noexcept { return bytes_.size() * 8; }

private:
    std::span<const uint8_t> bytes_;
    size_t cursor_ = 0;
};

}  // namespace elfstar
