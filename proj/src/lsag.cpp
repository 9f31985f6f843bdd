#include "ringvote/lsag.hpp"

#include "ringvote/ec_internal.hpp"
#include "ringvote/errors.hpp"

namespace ringvote::lsag {

using detail::GeneratorTable;
using detail::JPoint;

KeyPair keygen(const Curve& curve, RandomSource& rng) {
    Scalar sk = curve.random_scalar(rng);
    return KeyPair{sk, curve.mul_generator(sk)};
}

Scalar hpk(const Curve& curve, std::span<const Point> keys) {
    if (keys.empty()) throw ValidationError("hpk: empty ring");
    Scalar digest = curve.hash_scalar(curve.serialize_point(keys[0]));
    for (size_t i = 1; i < keys.size(); i++) {
        Bytes in = curve.serialize_scalar(digest);
        append(in, curve.serialize_point(keys[i]));
        digest = curve.hash_scalar(in);
    }
    return digest;
}

Ring::Ring(const Curve& curve, std::vector<Point> keys) : curve_(&curve) {
    for (const Point& pk : keys) append(pk);
}

void Ring::append(const Point& pk) {
    if (!curve_->on_curve(pk) || pk.infinity) {
        throw ValidationError("ring: key must be a non-infinity curve point");
    }
    if (keys_.empty()) {
        digest_ = curve_->hash_scalar(curve_->serialize_point(pk));
    } else {
        Bytes in = curve_->serialize_scalar(digest_);
        ringvote::append(in, curve_->serialize_point(pk));
        digest_ = curve_->hash_scalar(in);
    }
    keys_.push_back(pk);
}

Scalar Ring::digest() const {
    if (keys_.empty()) throw ValidationError("ring: digest of empty ring");
    return digest_;
}

struct RingPrecomp::Tables {
    GeneratorTable l_table;
    std::vector<GeneratorTable> key_tables;
    Point l_point;

    Tables(const Curve& c, const Point& l, const std::vector<Point>& keys)
        : l_table(c, l), l_point(l) {
        key_tables.reserve(keys.size());
        for (const Point& pk : keys) key_tables.emplace_back(c, pk);
    }
};

RingPrecomp::RingPrecomp(const Ring& ring) : ring_digest_(ring.digest()) {
    const Curve& c = ring.curve();
    Point l = c.hash_to_point(c.serialize_scalar(ring_digest_));
    tables_ = std::make_unique<Tables>(c, l, ring.keys());
}

RingPrecomp::~RingPrecomp() = default;

const Point& RingPrecomp::l_point() const {
    return tables_->l_point;
}

namespace {

// Builds per-call tables only when the ring amortizes their cost.
constexpr size_t kTableThreshold = 8;

} // namespace

// Shared machinery for the challenge chain of Sign and Verify:
//   A_i = s_i*G + c_{i-1}*pk_i,  B_i = s_i*L + c_{i-1}*T,
//   c_i = H(m || T || A_i || B_i).
// L = H2P(ser(HPK(ring))), from the precomp when one is supplied.
static Point ring_l_point(const Ring& ring, const RingPrecomp* pre);

struct ChainWalker {
    const Curve& curve;
    const Ring& ring;
    const RingPrecomp* pre;
    Point l_point;
    JPoint l_jac, t_jac;
    std::unique_ptr<GeneratorTable> l_table_local, t_table;
    Bytes msg_and_tag; // m || ser(T), the common hash prefix

    ChainWalker(const Ring& r, const RingPrecomp* precomp, const Point& l, const Point& tag,
                BytesView message)
        : curve(r.curve()), ring(r), pre(precomp), l_point(l) {
        if (pre && !(pre->ring_digest() == r.digest())) {
            throw ValidationError("ring precomp belongs to a different ring");
        }
        if (!pre) {
            if (ring.size() >= kTableThreshold) {
                l_table_local = std::make_unique<GeneratorTable>(curve, l_point);
            } else {
                l_jac = detail::to_jacobian(curve, l_point);
            }
        }
        if (ring.size() >= kTableThreshold) {
            t_table = std::make_unique<GeneratorTable>(curve, tag);
        } else {
            t_jac = detail::to_jacobian(curve, tag);
        }
        msg_and_tag.assign(message.begin(), message.end());
        append(msg_and_tag, curve.serialize_point(tag));
    }

    JPoint mul_l(const Scalar& k) const {
        if (k.is_zero()) return {};
        if (pre) return pre->tables_->l_table.mul(curve, k.v);
        if (l_table_local) return l_table_local->mul(curve, k.v);
        return detail::jmul(curve, k.v, l_jac);
    }

    JPoint mul_t(const Scalar& k) const {
        if (k.is_zero()) return {};
        if (t_table) return t_table->mul(curve, k.v);
        return detail::jmul(curve, k.v, t_jac);
    }

    JPoint mul_key(size_t i, const Scalar& k) const {
        if (k.is_zero()) return {};
        if (pre) return pre->tables_->key_tables[i].mul(curve, k.v);
        return detail::jmul(curve, k.v, detail::to_jacobian(curve, ring.key(i)));
    }

    JPoint mul_gen(const Scalar& k) const {
        if (k.is_zero()) return {};
        return curve.gen_table().mul(curve, k.v);
    }

    // c_i from the two unnormalized commitment points.
    Scalar challenge(const JPoint& a, const JPoint& b) const {
        std::vector<Point> ab = detail::batch_normalize(curve, {a, b});
        Bytes in = msg_and_tag;
        append(in, curve.serialize_point(ab[0]));
        append(in, curve.serialize_point(ab[1]));
        return curve.hash_scalar(in);
    }

    Scalar step(size_t i, const Scalar& s_i, const Scalar& c_prev) const {
        JPoint a = detail::jadd(curve, mul_gen(s_i), mul_key(i, c_prev));
        JPoint b = detail::jadd(curve, mul_l(s_i), mul_t(c_prev));
        return challenge(a, b);
    }
};

static Point ring_l_point(const Ring& ring, const RingPrecomp* pre) {
    if (pre) return pre->l_point();
    const Curve& c = ring.curve();
    return c.hash_to_point(c.serialize_scalar(ring.digest()));
}

Signature sign(const Ring& ring, size_t signer_index, const Scalar& sk, BytesView message,
               RandomSource& rng, const RingPrecomp* precomp) {
    const Curve& curve = ring.curve();
    size_t n = ring.size();
    if (n == 0) throw ValidationError("sign: empty ring");
    if (signer_index >= n) throw ValidationError("sign: signer index out of range");
    if (sk.is_zero() || !curve.scalar_in_range(sk.v)) {
        throw ValidationError("sign: secret key out of range");
    }
    if (!(curve.mul_generator(sk) == ring.key(signer_index))) {
        throw ValidationError("sign: secret key does not match the ring slot");
    }

    // T = sk * L is a pure function of (sk, ring); it never depends on the
    // message or on the randomness drawn below.
    Point l = ring_l_point(ring, precomp);
    Point tag = curve.scalar_mul(sk, l);
    ChainWalker walker(ring, precomp, l, tag, message);

    std::vector<Scalar> s(n);
    std::vector<Scalar> c(n);

    // Seed the chain at the signer's slot with fresh (u, s'),
    //   A = s'*G + u*pk, B = s'*L + u*T,
    // then walk i = pi+1, ..., n, 1, ..., pi-1 with random coefficients.
    Scalar u = curve.random_scalar(rng);
    Scalar s_seed = curve.random_scalar(rng);
    {
        JPoint a = detail::jadd(curve, walker.mul_gen(s_seed), walker.mul_key(signer_index, u));
        JPoint b = detail::jadd(curve, walker.mul_l(s_seed), walker.mul_t(u));
        c[signer_index] = walker.challenge(a, b);
    }
    for (size_t k = 1; k < n; k++) {
        size_t i = (signer_index + k) % n;
        size_t prev = (i + n - 1) % n;
        s[i] = curve.random_scalar(rng);
        c[i] = walker.step(i, s[i], c[prev]);
    }

    // Close the ring: s_pi = s' + sk*(u - c_{pi-1}) mod g. For n = 1 the
    // predecessor of pi is pi itself.
    size_t prev = (signer_index + n - 1) % n;
    Scalar diff = curve.s_sub(u, c[prev]);
    s[signer_index] = curve.s_add(s_seed, curve.s_mul(sk, diff));

    Signature sig;
    sig.ring_digest = ring.digest();
    sig.tag = tag;
    sig.s = std::move(s);
    sig.c = c[n - 1];
    return sig;
}

const char* to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::kOk: return "ok";
        case VerifyStatus::kBadStructure: return "bad-structure";
        case VerifyStatus::kRingMismatch: return "ring-mismatch";
        case VerifyStatus::kBadTag: return "bad-tag";
        case VerifyStatus::kScalarRange: return "scalar-out-of-range";
        case VerifyStatus::kChainMismatch: return "chain-mismatch";
    }
    return "unknown";
}

VerifyStatus verify_detailed(const Ring& ring, BytesView message, const Signature& sig,
                             const RingPrecomp* precomp, std::vector<Scalar>* chain_out) {
    const Curve& curve = ring.curve();
    size_t n = ring.size();
    if (n == 0 || sig.s.size() != n) return VerifyStatus::kBadStructure;
    if (!(sig.ring_digest == ring.digest())) return VerifyStatus::kRingMismatch;
    if (sig.tag.infinity || !curve.on_curve(sig.tag)) return VerifyStatus::kBadTag;
    if (!curve.scalar_in_range(sig.c.v)) return VerifyStatus::kScalarRange;
    for (const Scalar& s : sig.s) {
        if (!curve.scalar_in_range(s.v)) return VerifyStatus::kScalarRange;
    }

    Point l = ring_l_point(ring, precomp);
    ChainWalker walker(ring, precomp, l, sig.tag, message);

    // c_0 = anchor; the signature is valid iff the chain returns to it.
    Scalar c_prev = sig.c;
    if (chain_out) chain_out->clear();
    for (size_t i = 0; i < n; i++) {
        c_prev = walker.step(i, sig.s[i], c_prev);
        if (chain_out) chain_out->push_back(c_prev);
    }
    return c_prev == sig.c ? VerifyStatus::kOk : VerifyStatus::kChainMismatch;
}

bool link(const Curve& curve, const Signature& a, const Signature& b) {
    if (!(a.ring_digest == b.ring_digest)) {
        throw ValidationError("link: signatures reference different rings");
    }
    return curve.serialize_point(a.tag) == curve.serialize_point(b.tag);
}

Bytes serialize(const Curve& curve, const Signature& sig) {
    Bytes out = curve.serialize_scalar(sig.ring_digest);
    append(out, curve.serialize_point(sig.tag));
    append_be32(out, uint32_t(sig.s.size()));
    for (const Scalar& s : sig.s) append(out, curve.serialize_scalar(s));
    append(out, curve.serialize_scalar(sig.c));
    return out;
}

Signature deserialize(const Curve& curve, BytesView bytes) {
    size_t sw = curve.scalar_width();
    size_t pw = curve.point_width();
    if (bytes.size() < sw + pw + 4 + sw) throw ValidationError("signature: truncated");
    size_t pos = 0;
    Signature sig;
    sig.ring_digest = curve.deserialize_scalar(bytes.subspan(pos, sw));
    pos += sw;
    sig.tag = curve.deserialize_point(bytes.subspan(pos, pw));
    pos += pw;
    uint32_t n = read_be32(bytes, pos);
    pos += 4;
    if (bytes.size() != sw + pw + 4 + (size_t(n) + 1) * sw) {
        throw ValidationError("signature: length does not match coefficient count");
    }
    sig.s.reserve(n);
    for (uint32_t i = 0; i < n; i++) {
        sig.s.push_back(curve.deserialize_scalar(bytes.subspan(pos, sw)));
        pos += sw;
    }
    sig.c = curve.deserialize_scalar(bytes.subspan(pos, sw));
    return sig;
}

size_t framing_overhead(const Curve& curve) {
    return curve.scalar_width() + 4;
}

} // namespace ringvote::lsag
