#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ringvote/curve.hpp"

namespace ringvote::lsag {

struct KeyPair {
    Scalar sk; // in {1, ..., g-1}
    Point pk;  // sk * G
};

KeyPair keygen(const Curve& curve, RandomSource& rng);

// Cumulative hash over an ordered key tuple:
//   HPK(pk_1) = H(ser(pk_1)), HPK(pk_1..pk_i) = H(ser(HPK(..pk_{i-1})) || ser(pk_i)).
// Appending a key therefore only needs the previous digest.
Scalar hpk(const Curve& curve, std::span<const Point> keys);

// Ordered public-key ring with its cached cumulative digest.
class Ring {
public:
    explicit Ring(const Curve& curve) : curve_(&curve) {}
    Ring(const Curve& curve, std::vector<Point> keys);

    void append(const Point& pk); // validates; updates digest incrementally

    const Curve& curve() const { return *curve_; }
    size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }
    const Point& key(size_t i) const { return keys_[i]; } // 0-based
    const std::vector<Point>& keys() const { return keys_; }

    Scalar digest() const; // throws ValidationError on empty ring

private:
    const Curve* curve_;
    std::vector<Point> keys_;
    Scalar digest_{};
};

// sigma = (ring digest, T, s_1..s_n, c). The full key list is referenced via
// the ring digest: it is fixed once registration ends and stored once.
struct Signature {
    Scalar ring_digest;
    Point tag; // T = sk * H2P(ser(ring digest))
    std::vector<Scalar> s;
    Scalar c; // anchor, equals c_n of the challenge chain
};

// Per-ring fixed-base tables; one instance serves any number of sign/verify
// calls against the same ring. Worth building from a few dozen members up.
class RingPrecomp {
public:
    explicit RingPrecomp(const Ring& ring);
    ~RingPrecomp();
    RingPrecomp(const RingPrecomp&) = delete;
    RingPrecomp& operator=(const RingPrecomp&) = delete;

    const Scalar& ring_digest() const { return ring_digest_; }
    const Point& l_point() const;

private:
    friend struct ChainWalker;
    struct Tables;
    Scalar ring_digest_;
    std::unique_ptr<Tables> tables_;
};

// signer_index is 0-based. Throws ValidationError when the key pair does not
// match the ring slot or the index is out of range.
Signature sign(const Ring& ring, size_t signer_index, const Scalar& sk, BytesView message,
               RandomSource& rng, const RingPrecomp* precomp = nullptr);

enum class VerifyStatus {
    kOk,
    kBadStructure,  // coefficient count does not match the ring
    kRingMismatch,  // signature was produced against a different ring
    kBadTag,        // T off-curve or infinity
    kScalarRange,   // some s_i or c out of {0, ..., g-1}
    kChainMismatch, // challenge chain fails to close
};

const char* to_string(VerifyStatus s);

// chain_out, when given, receives the recomputed challenges c_1..c_n.
VerifyStatus verify_detailed(const Ring& ring, BytesView message, const Signature& sig,
                             const RingPrecomp* precomp = nullptr,
                             std::vector<Scalar>* chain_out = nullptr);

inline bool verify(const Ring& ring, BytesView message, const Signature& sig,
                   const RingPrecomp* precomp = nullptr) {
    return verify_detailed(ring, message, sig, precomp) == VerifyStatus::kOk;
}

// 1 iff both signatures carry the same tag. Messages play no role. Throws
// ValidationError when the signatures reference different rings.
bool link(const Curve& curve, const Signature& a, const Signature& b);

// Wire format: ring digest || T (uncompressed) || n (be32) || s_1..s_n || c,
// scalars fixed-width for the curve. 32(n+3) signature bytes plus 36 bytes of
// framing on a 256-bit curve.
Bytes serialize(const Curve& curve, const Signature& sig);
Signature deserialize(const Curve& curve, BytesView bytes);
size_t framing_overhead(const Curve& curve); // digest width + 4-byte count

} // namespace ringvote::lsag
