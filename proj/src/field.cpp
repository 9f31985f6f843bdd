#include "ringvote/field.hpp"

#include "ringvote/errors.hpp"

namespace ringvote {

using u128 = unsigned __int128;

namespace {

U256 shr1(const U256& a) {
    U256 r;
    for (int i = 0; i < 4; i++) {
        r.w[i] = a.w[i] >> 1;
        if (i < 3) r.w[i] |= a.w[i + 1] << 63;
    }
    return r;
}

} // namespace

PrimeField::PrimeField(const U256& modulus) : p_(modulus) {
    if (!p_.is_odd() || p_ <= U256::from_u64(2)) {
        throw ValidationError("PrimeField: modulus must be an odd prime > 2");
    }
    bits_ = p_.bit_length();

    // n0 = -p^-1 mod 2^64 by Newton iteration
    uint64_t x = 1;
    for (int i = 0; i < 6; i++) x *= 2 - p_.w[0] * x;
    n0_ = ~x + 1;

    // 2^256 mod p and 2^512 mod p by repeated modular doubling
    U256 t = U256::from_u64(1);
    for (int i = 0; i < 256; i++) t = add(t, t);
    one_m_ = t;
    for (int i = 0; i < 256; i++) t = add(t, t);
    r2_ = t;
}

U256 PrimeField::add(const U256& a, const U256& b) const {
    U256 r;
    uint64_t carry = u256_add(r, a, b);
    U256 s;
    uint64_t borrow = u256_sub(s, r, p_);
    // reduce when the raw sum overflowed 2^256 or reached p
    if (carry || !borrow) return s;
    return r;
}

U256 PrimeField::sub(const U256& a, const U256& b) const {
    U256 r;
    if (u256_sub(r, a, b)) {
        U256 s;
        u256_add(s, r, p_);
        return s;
    }
    return r;
}

U256 PrimeField::neg(const U256& a) const {
    if (a.is_zero()) return a;
    U256 r;
    u256_sub(r, p_, a);
    return r;
}

U256 PrimeField::mont_mul(const U256& a, const U256& b) const {
    // CIOS; inputs < p, output < p.
    uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; i++) {
        u128 c = 0;
        for (int j = 0; j < 4; j++) {
            c += u128(a.w[j]) * b.w[i] + t[j];
            t[j] = uint64_t(c);
            c >>= 64;
        }
        c += t[4];
        t[4] = uint64_t(c);
        t[5] = uint64_t(c >> 64);

        uint64_t m = t[0] * n0_;
        c = u128(m) * p_.w[0] + t[0];
        c >>= 64;
        for (int j = 1; j < 4; j++) {
            c += u128(m) * p_.w[j] + t[j];
            t[j - 1] = uint64_t(c);
            c >>= 64;
        }
        c += t[4];
        t[3] = uint64_t(c);
        t[4] = t[5] + uint64_t(c >> 64);
    }
    U256 r{{t[0], t[1], t[2], t[3]}};
    U256 s;
    uint64_t borrow = u256_sub(s, r, p_);
    if (t[4] || !borrow) return s;
    return r;
}

U256 PrimeField::mul(const U256& a, const U256& b) const {
    return mont_mul(mont_mul(a, b), r2_);
}

U256 PrimeField::pow(const U256& base, const U256& exp) const {
    U256 acc = one_m_;
    U256 b = to_mont(base);
    int top = exp.bit_length();
    for (int i = top - 1; i >= 0; i--) {
        acc = mont_sqr(acc);
        if (exp.bit(i)) acc = mont_mul(acc, b);
    }
    return from_mont(acc);
}

U256 PrimeField::inv(const U256& a) const {
    if (a.is_zero()) throw ValidationError("PrimeField::inv: zero has no inverse");
    U256 e;
    u256_sub(e, p_, U256::from_u64(2));
    return pow(a, e);
}

bool PrimeField::is_qr(const U256& a) const {
    if (a.is_zero()) return true;
    U256 e;
    u256_sub(e, p_, U256::from_u64(1));
    e = shr1(e);
    return pow(a, e) == U256::from_u64(1);
}

std::optional<U256> PrimeField::sqrt(const U256& a) const {
    if (a.is_zero()) return U256{};
    if (!is_qr(a)) return std::nullopt;

    if ((p_.w[0] & 3) == 3) {
        // p = 4k+3: sqrt = a^(k+1)
        U256 e = shr1(shr1(p_));
        u256_add(e, e, U256::from_u64(1));
        return pow(a, e);
    }

    // Tonelli-Shanks for p = 1 mod 4: p - 1 = q * 2^s with q odd
    U256 q;
    u256_sub(q, p_, U256::from_u64(1));
    int s = 0;
    while (!q.is_odd()) {
        q = shr1(q);
        s++;
    }
    U256 z = U256::from_u64(2);
    while (is_qr(z)) {
        U256 next;
        u256_add(next, z, U256::from_u64(1));
        z = next;
    }
    U256 c = pow(z, q);
    U256 t = pow(a, q);
    U256 qq;
    u256_add(qq, q, U256::from_u64(1));
    U256 r = pow(a, shr1(qq));
    int m = s;
    while (t != U256::from_u64(1)) {
        U256 t2 = t;
        int i = 0;
        while (t2 != U256::from_u64(1)) {
            t2 = mul(t2, t2);
            i++;
            if (i == m) return std::nullopt;
        }
        U256 b = c;
        for (int j = 0; j < m - i - 1; j++) b = mul(b, b);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    return r;
}

U256 PrimeField::reduce_bytes(BytesView bytes) const {
    // base-256 Horner evaluation in the field
    uint64_t small_p = (p_.bit_length() <= 64) ? p_.low_u64() : 0;
    U256 acc;
    for (uint8_t byte : bytes) {
        for (int i = 0; i < 8; i++) acc = add(acc, acc);
        uint64_t v = small_p ? byte % small_p : byte;
        acc = add(acc, U256::from_u64(v));
    }
    return acc;
}

} // namespace ringvote
