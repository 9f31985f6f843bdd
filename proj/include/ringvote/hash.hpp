#pragma once

#include <array>
#include <cstdint>

#include "ringvote/bytes.hpp"

namespace ringvote {

// All hashing in the kit goes through one fixed 256-bit digest (SHA-256).
// Golden test vectors record the primitive, so it must never change silently.
inline constexpr const char* kHashPrimitive = "sha256";
inline constexpr size_t kDigestSize = 32;

using Digest = std::array<uint8_t, kDigestSize>;

Digest sha256(BytesView data);

// Streaming interface for large inputs (state digests, chain exports).
class Sha256 {
public:
    Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;
    ~Sha256();

    void update(BytesView data);
    Digest finish(); // resets for reuse

private:
    void* ctx_;
};

Digest hmac_sha256(BytesView key, BytesView message);

inline Bytes digest_bytes(const Digest& d) {
    return Bytes(d.begin(), d.end());
}

} // namespace ringvote
