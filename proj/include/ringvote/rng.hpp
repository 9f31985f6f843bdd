#pragma once

#include <cstdint>
#include <memory>

#include "ringvote/bytes.hpp"
#include "ringvote/hash.hpp"

namespace ringvote {

// Caller-provided randomness source. All protocol randomness flows through
// this interface so that sessions can be replayed bit-for-bit from a seed.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(uint8_t* out, size_t len) = 0;

    Bytes bytes(size_t len) {
        Bytes b(len);
        fill(b.data(), b.size());
        return b;
    }
    uint64_t next_u64();
    // Uniform in [0, bound). bound > 0.
    uint64_t below(uint64_t bound);
};

// OS-backed randomness for interactive CLI use.
class SystemRng final : public RandomSource {
public:
    void fill(uint8_t* out, size_t len) override;
};

// SHA-256 counter-mode generator. Same seed, same stream, on any platform.
class DeterministicRng final : public RandomSource {
public:
    explicit DeterministicRng(uint64_t seed);
    explicit DeterministicRng(BytesView seed);

    void fill(uint8_t* out, size_t len) override;

private:
    Digest key_;
    uint64_t counter_ = 0;
    Bytes block_;
    size_t avail_ = 0;
};

} // namespace ringvote
