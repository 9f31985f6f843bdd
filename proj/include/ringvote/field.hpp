#pragma once

#include <optional>

#include "ringvote/u256.hpp"

namespace ringvote {

// Arithmetic modulo an odd prime p < 2^256. Public operations take and return
// values in standard form (plain integers in [0, p)). The mont_* family works
// on Montgomery representation and exists for the elliptic-curve hot path.
//
// Not constant time; side-channel hardening is out of scope.
class PrimeField {
public:
    explicit PrimeField(const U256& modulus); // throws ValidationError unless odd and > 2

    const U256& modulus() const { return p_; }
    int bits() const { return bits_; }
    size_t byte_width() const { return size_t(bits_ + 7) / 8; }

    bool in_range(const U256& a) const { return a < p_; }

    U256 add(const U256& a, const U256& b) const;
    U256 sub(const U256& a, const U256& b) const;
    U256 neg(const U256& a) const;
    U256 mul(const U256& a, const U256& b) const;
    U256 pow(const U256& base, const U256& exp) const;
    U256 inv(const U256& a) const; // Fermat; throws ValidationError on zero
    bool is_qr(const U256& a) const;
    std::optional<U256> sqrt(const U256& a) const; // Tonelli-Shanks; nullopt if non-residue

    // Big-endian byte string of any length reduced mod p.
    U256 reduce_bytes(BytesView bytes) const;

    // Montgomery representation.
    U256 to_mont(const U256& a) const { return mont_mul(a, r2_); }
    U256 from_mont(const U256& a) const { return mont_mul(a, U256::from_u64(1)); }
    U256 mont_mul(const U256& a, const U256& b) const;
    U256 mont_sqr(const U256& a) const { return mont_mul(a, a); }
    const U256& mont_one() const { return one_m_; }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    U256 p_;
    U256 r2_;    // 2^512 mod p
    U256 one_m_; // 2^256 mod p
    uint64_t n0_ = 0; // -p^-1 mod 2^64
    int bits_ = 0;
};

} // namespace ringvote
