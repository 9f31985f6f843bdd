#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "ringvote/bytes.hpp"

namespace ringvote {

// Unsigned 256-bit integer, little-endian 64-bit limbs. Plain value type;
// modular semantics live in PrimeField.
struct U256 {
    std::array<uint64_t, 4> w{0, 0, 0, 0};

    static U256 from_u64(uint64_t v) { return U256{{v, 0, 0, 0}}; }

    bool is_zero() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
    bool is_odd() const { return w[0] & 1; }
    bool bit(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    int bit_length() const;
    uint64_t low_u64() const { return w[0]; }

    friend bool operator==(const U256&, const U256&) = default;
    friend std::strong_ordering operator<=>(const U256& a, const U256& b) {
        for (int i = 3; i >= 0; i--) {
            if (a.w[i] != b.w[i]) return a.w[i] <=> b.w[i];
        }
        return std::strong_ordering::equal;
    }

    // Big-endian, fixed width. Throws ValidationError if the value does not fit.
    Bytes to_bytes_be(size_t width) const;
    static U256 from_bytes_be(BytesView bytes); // up to 32 bytes

    // Accepts "0x..." hex or plain decimal. Throws ValidationError.
    static U256 parse(std::string_view text);
    std::string to_hex() const; // minimal-length, no 0x prefix
    std::string to_dec() const;
};

// Returns carry / borrow out.
uint64_t u256_add(U256& r, const U256& a, const U256& b);
uint64_t u256_sub(U256& r, const U256& a, const U256& b);

} // namespace ringvote
