#include "ringvote/rng.hpp"

#include <cstring>
#include <random>

#include "ringvote/errors.hpp"

namespace ringvote {

uint64_t RandomSource::next_u64() {
    uint8_t b[8];
    fill(b, 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v = (v << 8) | b[i];
    return v;
}

uint64_t RandomSource::below(uint64_t bound) {
    if (bound == 0) throw ValidationError("RandomSource::below: zero bound");
    // rejection sampling on the top region to avoid modulo bias
    uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

void SystemRng::fill(uint8_t* out, size_t len) {
    static thread_local std::random_device rd;
    size_t i = 0;
    while (i < len) {
        unsigned int v = rd();
        for (size_t j = 0; j < sizeof(v) && i < len; j++, i++) out[i] = uint8_t(v >> (8 * j));
    }
}

DeterministicRng::DeterministicRng(uint64_t seed) {
    Bytes s;
    append_be64(s, seed);
    key_ = sha256(s);
}

DeterministicRng::DeterministicRng(BytesView seed) {
    key_ = sha256(seed);
}

void DeterministicRng::fill(uint8_t* out, size_t len) {
    size_t done = 0;
    while (done < len) {
        if (avail_ == 0) {
            Bytes in(key_.begin(), key_.end());
            append_be64(in, counter_++);
            Digest d = sha256(in);
            block_.assign(d.begin(), d.end());
            avail_ = block_.size();
        }
        size_t take = std::min(avail_, len - done);
        std::memcpy(out + done, block_.data() + (block_.size() - avail_), take);
        avail_ -= take;
        done += take;
    }
}

} // namespace ringvote
