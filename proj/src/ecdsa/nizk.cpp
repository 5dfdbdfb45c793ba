#include "mpswap/ecdsa/nizk.hpp"

namespace mpswap::ecdsa {

namespace {

Bytes encode_pair(const Scalar& a, const Scalar& b) {
    ByteWriter w;
    w.raw(a.encode()).raw(b.encode());
    return std::move(w).take();
}

std::pair<Scalar, Scalar> decode_pair(const Group& group, ByteView data) {
    ByteReader r(data);
    auto a = group.decode_scalar(r.raw(group.scalar_bytes()));
    auto b = group.decode_scalar(r.raw(group.scalar_bytes()));
    r.expect_done();
    return {a, b};
}

Scalar dlog_challenge(const GroupElement& Y, const GroupElement& K) {
    const auto& g = Y.group();
    return hash_to_scalar(g, "dlog/v1", {g.generator().encode(), Y.encode(), K.encode()});
}

Scalar dleq_challenge(const GroupElement& base1, const GroupElement& pub1, const GroupElement& base2,
                      const GroupElement& pub2, const GroupElement& K1, const GroupElement& K2) {
    return hash_to_scalar(base1.group(), "dleq/v1",
                          {base1.encode(), pub1.encode(), base2.encode(), pub2.encode(), K1.encode(),
                           K2.encode()});
}

} // namespace

Bytes DlogProof::encode() const { return encode_pair(challenge, response); }

DlogProof DlogProof::decode(const Group& group, ByteView data) {
    auto [c, z] = decode_pair(group, data);
    return {c, z};
}

DlogProof dlog_prove(const Scalar& y, const GroupElement& Y, ByteView nonce_seed) {
    const auto& g = Y.group();
    auto k = hash_to_scalar(g, "dlog/nonce/v1", {y.encode(), Y.encode(), nonce_seed});
    auto c = dlog_challenge(Y, g.mul_base(k));
    return {c, k + c * y};
}

bool dlog_verify(const GroupElement& Y, const DlogProof& proof) {
    const auto& g = Y.group();
    auto K = g.mul_base(proof.response) - proof.challenge * Y;
    return dlog_challenge(Y, K) == proof.challenge;
}

Bytes DleqProof::encode() const { return encode_pair(challenge, response); }

DleqProof DleqProof::decode(const Group& group, ByteView data) {
    auto [c, z] = decode_pair(group, data);
    return {c, z};
}

DleqProof dleq_prove(const Scalar& x, const GroupElement& base1, const GroupElement& pub1,
                     const GroupElement& base2, const GroupElement& pub2, ByteView nonce_seed) {
    auto k = hash_to_scalar(x.group(), "dleq/nonce/v1",
                            {x.encode(), base1.encode(), pub1.encode(), base2.encode(), pub2.encode(),
                             nonce_seed});
    auto c = dleq_challenge(base1, pub1, base2, pub2, k * base1, k * base2);
    return {c, k + c * x};
}

bool dleq_verify(const GroupElement& base1, const GroupElement& pub1, const GroupElement& base2,
                 const GroupElement& pub2, const DleqProof& proof) {
    auto K1 = proof.response * base1 - proof.challenge * pub1;
    auto K2 = proof.response * base2 - proof.challenge * pub2;
    return dleq_challenge(base1, pub1, base2, pub2, K1, K2) == proof.challenge;
}

} // namespace mpswap::ecdsa
