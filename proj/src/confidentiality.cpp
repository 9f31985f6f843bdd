#include "ringvote/confidentiality.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "ringvote/errors.hpp"
#include "ringvote/hash.hpp"

namespace ringvote::conf {

EncryptionKeyPair generate_keypair(const Curve& curve, RandomSource& rng) {
    Scalar dk = curve.random_scalar(rng);
    return EncryptionKeyPair{dk, curve.mul_generator(dk)};
}

std::vector<SecretShare> share_key(const Curve& curve, const Scalar& secret, uint32_t k,
                                   uint32_t n, RandomSource& rng) {
    if (k < 1 || k > n) throw ValidationError("share_key: need 1 <= K <= N");
    // f(x) = secret + a_1 x + ... + a_{k-1} x^{k-1} over the scalar field
    std::vector<Scalar> coeff(k);
    coeff[0] = secret;
    for (uint32_t i = 1; i < k; i++) coeff[i] = curve.random_scalar(rng, /*allow_zero=*/true);

    std::vector<SecretShare> shares;
    shares.reserve(n);
    for (uint32_t idx = 1; idx <= n; idx++) {
        Scalar x = curve.scalar_from_u64(idx);
        Scalar acc = coeff[k - 1];
        for (uint32_t j = k - 1; j-- > 0;) {
            acc = curve.s_add(curve.s_mul(acc, x), coeff[j]);
        }
        shares.push_back(SecretShare{idx, acc});
    }
    return shares;
}

Scalar reconstruct_key(const Curve& curve, std::span<const SecretShare> shares, uint32_t k) {
    if (k < 1) throw ValidationError("reconstruct_key: K must be >= 1");
    if (shares.size() < k) throw ValidationError("reconstruct_key: not enough shares");
    std::set<uint32_t> indices;
    for (const auto& s : shares) {
        if (s.index == 0) throw ValidationError("reconstruct_key: share index 0 is reserved");
        if (!indices.insert(s.index).second) {
            throw ValidationError("reconstruct_key: duplicate share index");
        }
    }
    // Lagrange at 0 over the first k shares:
    //   secret = sum_i value_i * prod_{j != i} x_j / (x_j - x_i)
    Scalar secret{};
    for (uint32_t i = 0; i < k; i++) {
        Scalar num = curve.scalar_from_u64(1);
        Scalar den = curve.scalar_from_u64(1);
        Scalar xi = curve.scalar_from_u64(shares[i].index);
        for (uint32_t j = 0; j < k; j++) {
            if (j == i) continue;
            Scalar xj = curve.scalar_from_u64(shares[j].index);
            num = curve.s_mul(num, xj);
            den = curve.s_mul(den, curve.s_sub(xj, xi));
        }
        Scalar lambda = curve.s_mul(num, curve.s_inv(den));
        secret = curve.s_add(secret, curve.s_mul(shares[i].value, lambda));
    }
    return secret;
}

namespace {

Bytes keystream(const Curve& curve, const Point& shared, size_t len) {
    Bytes seed = curve.serialize_point(shared);
    Bytes out;
    out.reserve(len + kDigestSize);
    uint32_t counter = 0;
    while (out.size() < len) {
        Bytes block_in = seed;
        append_be32(block_in, counter++);
        Digest d = sha256(block_in);
        out.insert(out.end(), d.begin(), d.end());
    }
    out.resize(len);
    return out;
}

} // namespace

BallotCiphertext encrypt_ballot(const Curve& curve, const Point& ek, BytesView plaintext,
                                RandomSource& rng) {
    if (ek.infinity || !curve.on_curve(ek)) {
        throw ValidationError("encrypt_ballot: encryption key must be a curve point");
    }
    Scalar r = curve.random_scalar(rng);
    BallotCiphertext ct;
    ct.ephemeral = curve.mul_generator(r);
    Point shared = curve.scalar_mul(r, ek);
    Bytes ks = keystream(curve, shared, plaintext.size());
    ct.body.resize(plaintext.size());
    for (size_t i = 0; i < plaintext.size(); i++) ct.body[i] = plaintext[i] ^ ks[i];
    return ct;
}

Bytes decrypt_ballot(const Curve& curve, const Scalar& dk, const BallotCiphertext& ct) {
    if (ct.ephemeral.infinity || !curve.on_curve(ct.ephemeral)) {
        throw ValidationError("decrypt_ballot: ephemeral point invalid");
    }
    Point shared = curve.scalar_mul(dk, ct.ephemeral);
    Bytes ks = keystream(curve, shared, ct.body.size());
    Bytes out(ct.body.size());
    for (size_t i = 0; i < ct.body.size(); i++) out[i] = ct.body[i] ^ ks[i];
    return out;
}

Bytes serialize_ciphertext(const Curve& curve, const BallotCiphertext& ct) {
    Bytes out = curve.serialize_point(ct.ephemeral);
    append_be32(out, uint32_t(ct.body.size()));
    append(out, ct.body);
    return out;
}

BallotCiphertext deserialize_ciphertext(const Curve& curve, BytesView bytes) {
    size_t pw = curve.point_width();
    if (bytes.size() < pw + 4) throw ValidationError("ciphertext: truncated");
    BallotCiphertext ct;
    ct.ephemeral = curve.deserialize_point(bytes.subspan(0, pw));
    uint32_t len = read_be32(bytes, pw);
    if (bytes.size() != pw + 4 + len) throw ValidationError("ciphertext: length mismatch");
    ct.body.assign(bytes.begin() + pw + 4, bytes.end());
    return ct;
}

BallotCommitment commit_ballot(BytesView plaintext, BytesView salt) {
    if (salt.size() != kSaltSize) throw ValidationError("commit_ballot: salt must be 32 bytes");
    Bytes in(plaintext.begin(), plaintext.end());
    append(in, salt);
    return BallotCommitment{sha256(in)};
}

bool check_claim(const BallotCommitment& commitment, BytesView plaintext, BytesView salt) {
    if (salt.size() != kSaltSize) return false;
    Bytes in(plaintext.begin(), plaintext.end());
    append(in, salt);
    return sha256(in) == commitment.digest;
}

std::string share_to_json(const Curve& curve, const SecretShare& share) {
    nlohmann::json j;
    j["index"] = share.index;
    j["value"] = to_hex(curve.serialize_scalar(share.value));
    return j.dump();
}

SecretShare share_from_json(const Curve& curve, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SecretShare s;
    s.index = j.at("index").get<uint32_t>();
    s.value = curve.deserialize_scalar(from_hex(j.at("value").get<std::string>()));
    return s;
}

} // namespace ringvote::conf
