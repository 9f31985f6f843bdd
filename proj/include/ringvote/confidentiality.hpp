#pragma once

#include <vector>

#include "ringvote/curve.hpp"

namespace ringvote::conf {

struct EncryptionKeyPair {
    Scalar dk; // decryption key
    Point ek;  // dk * G
};

EncryptionKeyPair generate_keypair(const Curve& curve, RandomSource& rng);

// Shamir share over the scalar field: value = f(index) for the session's
// degree-(K-1) polynomial with f(0) = secret. Indices run 1..N.
struct SecretShare {
    uint32_t index = 0;
    Scalar value;

    friend bool operator==(const SecretShare&, const SecretShare&) = default;
};

// K-of-N split. Any K shares reconstruct; K-1 reveal nothing about the secret.
std::vector<SecretShare> share_key(const Curve& curve, const Scalar& secret, uint32_t k,
                                   uint32_t n, RandomSource& rng);

// Lagrange interpolation at 0. Needs >= k distinct-index shares.
Scalar reconstruct_key(const Curve& curve, std::span<const SecretShare> shares, uint32_t k);

// Randomized hybrid encryption: fresh r, R = r*G, keystream blocks
// H(ser(r*ek) || counter), body = plaintext XOR keystream.
struct BallotCiphertext {
    Point ephemeral; // R
    Bytes body;

    friend bool operator==(const BallotCiphertext&, const BallotCiphertext&) = default;
};

BallotCiphertext encrypt_ballot(const Curve& curve, const Point& ek, BytesView plaintext,
                                RandomSource& rng);
Bytes decrypt_ballot(const Curve& curve, const Scalar& dk, const BallotCiphertext& ct);

// Wire: R (uncompressed point) || be32 body length || body.
Bytes serialize_ciphertext(const Curve& curve, const BallotCiphertext& ct);
BallotCiphertext deserialize_ciphertext(const Curve& curve, BytesView bytes);

// Commit-reveal ("vote claim") mode: digest = H(plaintext || salt), salt is
// 32 bytes of caller-provided entropy.
struct BallotCommitment {
    Digest digest{};

    friend bool operator==(const BallotCommitment&, const BallotCommitment&) = default;
};

inline constexpr size_t kSaltSize = 32;

BallotCommitment commit_ballot(BytesView plaintext, BytesView salt);
bool check_claim(const BallotCommitment& commitment, BytesView plaintext, BytesView salt);

// Share file row: {"index": n, "value": hex}.
std::string share_to_json(const Curve& curve, const SecretShare& share);
SecretShare share_from_json(const Curve& curve, const std::string& text);

} // namespace ringvote::conf
