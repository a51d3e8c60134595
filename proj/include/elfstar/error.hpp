#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elfstar {

// Thrown when an input byte sequence is not a valid stream: truncated
// payloads, bad magic, out-of-range header fields, malformed rules.
class decode_error : public std::runtime_error {
public:
    explicit decode_error(const std::string& what, size_t bit_offset = 0)
        : std::runtime_error(what), bit_offset_(bit_offset) {}

    // Bit position in the payload at which decoding failed, when known.
    size_t bit_offset() const noexcept { return bit_offset_; }

private:
    size_t bit_offset_;
};

}  // namespace elfstar
