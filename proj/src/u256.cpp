#include "ringvote/u256.hpp"

#include <algorithm>

#include "ringvote/errors.hpp"

namespace ringvote {

using u128 = unsigned __int128;

int U256::bit_length() const {
    for (int i = 3; i >= 0; i--) {
        if (w[i] != 0) return 64 * i + 64 - __builtin_clzll(w[i]);
    }
    return 0;
}

uint64_t u256_add(U256& r, const U256& a, const U256& b) {
    u128 c = 0;
    for (int i = 0; i < 4; i++) {
        c += u128(a.w[i]) + b.w[i];
        r.w[i] = uint64_t(c);
        c >>= 64;
    }
    return uint64_t(c);
}

uint64_t u256_sub(U256& r, const U256& a, const U256& b) {
    uint64_t borrow = 0;
    for (int i = 0; i < 4; i++) {
        u128 d = u128(a.w[i]) - b.w[i] - borrow;
        r.w[i] = uint64_t(d);
        borrow = uint64_t(d >> 64) & 1;
    }
    return borrow;
}

Bytes U256::to_bytes_be(size_t width) const {
    if (size_t(std::max(bit_length(), 1) + 7) / 8 > width) {
        throw ValidationError("U256::to_bytes_be: value does not fit requested width");
    }
    Bytes out(width, 0);
    for (size_t i = 0; i < width && i < 32; i++) {
        out[width - 1 - i] = uint8_t(w[i / 8] >> (8 * (i % 8)));
    }
    return out;
}

U256 U256::from_bytes_be(BytesView bytes) {
    if (bytes.size() > 32) throw ValidationError("U256::from_bytes_be: more than 32 bytes");
    U256 r;
    for (size_t i = 0; i < bytes.size(); i++) {
        size_t pos = bytes.size() - 1 - i; // byte index from the little end
        r.w[i / 8] |= uint64_t(bytes[pos]) << (8 * (i % 8));
    }
    return r;
}

static U256 mul_small_add(const U256& a, uint64_t m, uint64_t add) {
    U256 r;
    u128 c = add;
    for (int i = 0; i < 4; i++) {
        c += u128(a.w[i]) * m;
        r.w[i] = uint64_t(c);
        c >>= 64;
    }
    if (c != 0) throw ValidationError("U256: overflow while parsing");
    return r;
}

U256 U256::parse(std::string_view text) {
    if (text.empty()) throw ValidationError("U256::parse: empty string");
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        std::string_view hex = text.substr(2);
        if (hex.empty() || hex.size() > 64) throw ValidationError("U256::parse: bad hex length");
        std::string padded(hex.size() % 2 ? "0" : "", hex.size() % 2 ? 1 : 0);
        padded += hex;
        return from_bytes_be(from_hex(padded));
    }
    U256 r;
    for (char c : text) {
        if (c < '0' || c > '9') throw ValidationError("U256::parse: non-decimal character");
        r = mul_small_add(r, 10, uint64_t(c - '0'));
    }
    return r;
}

std::string U256::to_hex() const {
    Bytes be = to_bytes_be(32);
    size_t first = 0;
    while (first + 1 < be.size() && be[first] == 0) first++;
    std::string s = ringvote::to_hex(BytesView(be.data() + first, be.size() - first));
    if (s.size() > 1 && s[0] == '0' && bit_length() % 8 != 0 && bit_length() % 8 <= 4) {
        s.erase(0, 1);
    }
    return s;
}

std::string U256::to_dec() const {
    if (is_zero()) return "0";
    U256 v = *this;
    std::string out;
    while (!v.is_zero()) {
        // divide by 10, collect remainder
        U256 q;
        uint64_t rem = 0;
        for (int i = 3; i >= 0; i--) {
            u128 cur = (u128(rem) << 64) | v.w[i];
            q.w[i] = uint64_t(cur / 10);
            rem = uint64_t(cur % 10);
        }
        out.push_back(char('0' + rem));
        v = q;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace ringvote
