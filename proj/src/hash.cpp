#include "ringvote/hash.hpp"

#include <openssl/evp.h>

#include "ringvote/errors.hpp"

namespace ringvote {

Digest sha256(BytesView data) {
    Digest out;
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != kDigestSize) {
        throw InternalError("sha256: EVP_Digest failed");
    }
    return out;
}

Sha256::Sha256() {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw InternalError("sha256: init failed");
    }
    ctx_ = ctx;
}

Sha256::~Sha256() {
    EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_));
}

void Sha256::update(BytesView data) {
    if (EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data.data(), data.size()) != 1) {
        throw InternalError("sha256: update failed");
    }
}

Digest Sha256::finish() {
    Digest out;
    unsigned int len = 0;
    auto* ctx = static_cast<EVP_MD_CTX*>(ctx_);
    if (EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != kDigestSize) {
        throw InternalError("sha256: final failed");
    }
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    return out;
}

Digest hmac_sha256(BytesView key, BytesView message) {
    // HMAC(K, m) = H((K' ^ opad) || H((K' ^ ipad) || m)) with a 64-byte block.
    constexpr size_t block = 64;
    Bytes k(block, 0);
    if (key.size() > block) {
        Digest kd = sha256(key);
        std::copy(kd.begin(), kd.end(), k.begin());
    } else {
        std::copy(key.begin(), key.end(), k.begin());
    }
    Bytes inner(block), outer(block);
    for (size_t i = 0; i < block; i++) {
        inner[i] = k[i] ^ 0x36;
        outer[i] = k[i] ^ 0x5c;
    }
    append(inner, message);
    Digest h1 = sha256(inner);
    append(outer, BytesView(h1.data(), h1.size()));
    return sha256(outer);
}

} // namespace ringvote
