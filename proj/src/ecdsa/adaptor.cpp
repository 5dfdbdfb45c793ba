#include "mpswap/ecdsa/adaptor.hpp"

#include "mpswap/error.hpp"

namespace mpswap::ecdsa {

EcdsaKeyPair EcdsaKeyPair::derive(const Group& group, ByteView seed) {
    auto x = hash_to_scalar(group, "ecdsa/key/v1", {seed});
    return {x, group.mul_base(x)};
}

Bytes Statement::encode() const {
    ByteWriter w;
    w.raw(Y.encode()).raw(pok.encode());
    return std::move(w).take();
}

Statement Statement::decode(const Group& group, ByteView data) {
    ByteReader r(data);
    auto Y = group.decode_element(r.raw(group.element_bytes()));
    auto pok = DlogProof::decode(group, r.raw(2 * group.scalar_bytes()));
    r.expect_done();
    return {Y, pok};
}

StatementWitness gen_statement_witness(const Group& group, ByteView seed) {
    auto y = hash_to_scalar(group, "ecdsa/witness/v1", {seed});
    if (y.is_zero()) y = group.scalar(1);
    auto Y = group.mul_base(y);
    return {{Y, dlog_prove(y, Y, seed)}, y};
}

bool statement_verify(const Statement& stmt) { return dlog_verify(stmt.Y, stmt.pok); }

Bytes EcdsaPreSignature::encode() const {
    ByteWriter w;
    w.raw(r.encode()).raw(s_hat.encode()).raw(Z.encode()).raw(dleq.encode());
    return std::move(w).take();
}

EcdsaPreSignature EcdsaPreSignature::decode(const Group& group, ByteView data) {
    ByteReader rd(data);
    auto r = group.decode_scalar(rd.raw(group.scalar_bytes()));
    auto s_hat = group.decode_scalar(rd.raw(group.scalar_bytes()));
    auto Z = group.decode_element(rd.raw(group.element_bytes()));
    auto dleq = DleqProof::decode(group, rd.raw(2 * group.scalar_bytes()));
    rd.expect_done();
    return {r, s_hat, Z, dleq};
}

Bytes EcdsaSignature::encode() const {
    ByteWriter w;
    w.raw(r.encode()).raw(s.encode());
    return std::move(w).take();
}

EcdsaSignature EcdsaSignature::decode(const Group& group, ByteView data) {
    ByteReader rd(data);
    auto r = group.decode_scalar(rd.raw(group.scalar_bytes()));
    auto s = group.decode_scalar(rd.raw(group.scalar_bytes()));
    rd.expect_done();
    return {r, s};
}

Scalar conversion(const GroupElement& p) {
    const auto& group = p.group();
    return group.scalar(group.coordinate(p));
}

Scalar message_hash(const Group& group, ByteView message) {
    return hash_to_scalar(group, "ecdsa/msg/v1", {message});
}

EcdsaPreSignature p_sign_with_nonce(const EcdsaKeyPair& kp, ByteView message, const Statement& stmt,
                                    const Scalar& k, ByteView proof_seed) {
    if (!statement_verify(stmt)) throw Error(Errc::kInvalidStatement, "proof of knowledge for Y fails");
    const auto& group = kp.Q.group();
    if (k.is_zero()) throw Error(Errc::kInvalidArgument, "zero nonce");
    auto Z = kp.x * stmt.Y;
    auto kY = k * stmt.Y;
    if (kY.is_identity()) throw Error(Errc::kInvalidArgument, "nonce gives identity");
    auto r = conversion(kY);
    auto s_hat = k.inverse() * (message_hash(group, message) + r * kp.x);
    if (r.is_zero() || s_hat.is_zero()) throw Error(Errc::kInvalidArgument, "nonce gives r == 0 or s == 0");
    auto proof = dleq_prove(kp.x, group.generator(), kp.Q, stmt.Y, Z, proof_seed);
    return {r, s_hat, Z, proof};
}

EcdsaPreSignature p_sign(const EcdsaKeyPair& kp, ByteView message, const Statement& stmt, ByteView seed) {
    if (!statement_verify(stmt)) throw Error(Errc::kInvalidStatement, "proof of knowledge for Y fails");
    const auto& group = kp.Q.group();
    for (std::uint64_t attempt = 0;; ++attempt) {
        ByteWriter w;
        w.u64(attempt);
        auto k = hash_to_scalar(group, "ecdsa/nonce/v1",
                                {kp.x.encode(), message, stmt.Y.encode(), seed, w.bytes()});
        try {
            return p_sign_with_nonce(kp, message, stmt, k, seed);
        } catch (const Error& e) {
            if (e.code() != Errc::kInvalidArgument) throw;
        }
    }
}

bool p_vrfy(const GroupElement& Q, ByteView message, const Statement& stmt, const EcdsaPreSignature& presig) {
    const auto& group = Q.group();
    if (!dleq_verify(group.generator(), Q, stmt.Y, presig.Z, presig.dleq)) return false;
    if (presig.r.is_zero() || presig.s_hat.is_zero()) return false;
    auto K = presig.s_hat.inverse() * (message_hash(group, message) * stmt.Y + presig.r * presig.Z);
    if (K.is_identity()) return false;
    return conversion(K) == presig.r;
}

EcdsaSignature adapt(const EcdsaPreSignature& presig, const Scalar& y) {
    if (y.is_zero()) throw Error(Errc::kZeroWitness, "adaptor witness must be non-zero");
    return {presig.r, presig.s_hat * y.inverse()};
}

std::optional<Scalar> extract(const EcdsaSignature& sig, const EcdsaPreSignature& presig,
                              const Statement& stmt) {
    if (sig.s.is_zero()) return std::nullopt;
    auto y = presig.s_hat * sig.s.inverse();
    if (stmt.Y.group().mul_base(y) != stmt.Y) return std::nullopt;
    return y;
}

bool ecdsa_verify(const GroupElement& Q, ByteView message, const EcdsaSignature& sig) {
    const auto& group = Q.group();
    if (sig.r.is_zero() || sig.s.is_zero()) return false;
    auto w = sig.s.inverse();
    auto K = group.mul_base(message_hash(group, message) * w) + (sig.r * w) * Q;
    if (K.is_identity()) return false;
    return conversion(K) == sig.r;
}

} // namespace mpswap::ecdsa
