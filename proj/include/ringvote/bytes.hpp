#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ringvote {

using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(BytesView b) {
    return std::string(b.begin(), b.end());
}

inline void append(Bytes& out, BytesView more) {
    out.insert(out.end(), more.begin(), more.end());
}

inline void append_be32(Bytes& out, uint32_t v) {
    out.push_back(uint8_t(v >> 24));
    out.push_back(uint8_t(v >> 16));
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

inline void append_be64(Bytes& out, uint64_t v) {
    append_be32(out, uint32_t(v >> 32));
    append_be32(out, uint32_t(v));
}

uint32_t read_be32(BytesView in, size_t offset);
uint64_t read_be64(BytesView in, size_t offset);

std::string to_hex(BytesView b);
Bytes from_hex(std::string_view hex); // throws ValidationError on malformed input

// Length-prefixed field list: be32 count, then per field be32 length + bytes.
// The encoding is injective, so it doubles as the canonical form for digests.
Bytes encode_fields(const std::vector<Bytes>& fields);
std::vector<Bytes> decode_fields(BytesView in); // throws ValidationError

} // namespace ringvote
