#include "mpswap/schnorr/adaptor.hpp"

#include "mpswap/crypto/hash.hpp"
#include "mpswap/error.hpp"

namespace mpswap::schnorr {

namespace {

constexpr std::string_view kChallengeTag = "swap/challenge/v1";

template <typename Sig>
Bytes encode_signature(const Sig& sig, const Scalar& s) {
    ByteWriter w;
    w.str(sig.party_id).raw(sig.c.encode()).raw(s.encode()).raw(sig.R.encode()).raw(sig.T.encode());
    return std::move(w).take();
}

struct DecodedFields {
    std::string party_id;
    Scalar c, s;
    GroupElement R, T;
};

DecodedFields decode_signature(const Group& group, ByteView data) {
    ByteReader r(data);
    DecodedFields f;
    f.party_id = r.str();
    f.c = group.decode_scalar(r.raw(group.scalar_bytes()));
    f.s = group.decode_scalar(r.raw(group.scalar_bytes()));
    f.R = group.decode_element(r.raw(group.element_bytes()));
    f.T = group.decode_element(r.raw(group.element_bytes()));
    r.expect_done();
    return f;
}

} // namespace

KeyPair KeyPair::from_secret(const Scalar& sk) { return {sk, sk.group().mul_base(sk)}; }

KeyPair KeyPair::derive(const Group& group, ByteView seed) {
    return from_secret(hash_to_scalar(group, "schnorr/key/v1", {seed}));
}

NoncePair NoncePair::derive(const Group& group, ByteView seed) {
    auto r = hash_to_scalar(group, "schnorr/nonce/v1", {seed});
    return {r, group.mul_base(r)};
}

NoncePair OneTimeNonce::take() {
    if (!nonce_) throw Error(Errc::kNonceReuse, "nonce already used");
    NoncePair out = std::move(*nonce_);
    nonce_.reset();
    return out;
}

AdaptorSecret AdaptorSecret::derive(const Group& group, ByteView seed) {
    auto t = hash_to_scalar(group, "schnorr/adaptor-secret/v1", {seed});
    return {t, group.mul_base(t)};
}

Bytes PreSignature::encode() const { return encode_signature(*this, s_pre); }

PreSignature PreSignature::decode(const Group& group, ByteView data) {
    auto f = decode_signature(group, data);
    return {std::move(f.party_id), f.c, f.s, f.R, f.T};
}

Bytes FullSignature::encode() const { return encode_signature(*this, s); }

FullSignature FullSignature::decode(const Group& group, ByteView data) {
    auto f = decode_signature(group, data);
    return {std::move(f.party_id), f.c, f.s, f.R, f.T};
}

Scalar compute_challenge(const GroupElement& R, const GroupElement& T, const GroupElement& pk,
                         const ChallengeBinding& binding, ByteView message) {
    const auto& group = pk.group();
    const std::uint8_t mode = static_cast<std::uint8_t>(binding.mode());
    const Bytes nonce_point = (R + T).encode();
    const Bytes key = pk.encode();
    if (binding.mode() == ChallengeBinding::Mode::kDirect) {
        return hash_to_scalar(group, kChallengeTag, {ByteView(&mode, 1), nonce_point, key, message});
    }
    return hash_to_scalar(group, kChallengeTag,
                          {ByteView(&mode, 1), nonce_point, key, binding.keys_digest(),
                           binding.msgs_digest(), message});
}

Scalar pre_sign(const KeyPair& kp, const NoncePair& nonce, const Scalar& c) { return nonce.r + c * kp.sk; }

bool pre_verify(const PreSignature& ps, const GroupElement& pk) {
    const auto& group = pk.group();
    return group.mul_base(ps.s_pre) == ps.R + ps.c * pk;
}

Scalar adapt(const Scalar& s_pre, const Scalar& t) { return s_pre + t; }

bool verify_full(const FullSignature& fs, const GroupElement& pk) {
    const auto& group = pk.group();
    return group.mul_base(fs.s) == fs.R + fs.T + fs.c * pk;
}

Scalar extract_secret(const Scalar& s_full, const Scalar& s_pre) { return s_full - s_pre; }

FullSignature complete(const PreSignature& ps, const Scalar& t) {
    return {ps.party_id, ps.c, adapt(ps.s_pre, t), ps.R, ps.T};
}

} // namespace mpswap::schnorr
