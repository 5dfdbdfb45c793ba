#pragma once

#include <optional>

#include "mpswap/bytes.hpp"
#include "mpswap/crypto/group.hpp"
#include "mpswap/ecdsa/nizk.hpp"

namespace mpswap::ecdsa {

struct EcdsaKeyPair {
    Scalar x;
    GroupElement Q;

    static EcdsaKeyPair derive(const Group& group, ByteView seed);
};

/// Public instance I_Y = (Y, π_Y) of the hard relation Y = y·G.
struct Statement {
    GroupElement Y;
    DlogProof pok;

    Bytes encode() const;
    static Statement decode(const Group& group, ByteView data);
};

struct StatementWitness {
    Statement statement;
    Scalar y;
};

/// GenR: a fresh (I_Y, y) with a proof of knowledge of y.
StatementWitness gen_statement_witness(const Group& group, ByteView seed);
bool statement_verify(const Statement& stmt);

/// σ̂ = (r, ŝ, Z, π_Z).
struct EcdsaPreSignature {
    Scalar r;
    Scalar s_hat;
    GroupElement Z;
    DleqProof dleq;

    Bytes encode() const;
    static EcdsaPreSignature decode(const Group& group, ByteView data);
    friend bool operator==(const EcdsaPreSignature&, const EcdsaPreSignature&) = default;
};

struct EcdsaSignature {
    Scalar r;
    Scalar s;

    Bytes encode() const;
    static EcdsaSignature decode(const Group& group, ByteView data);
    friend bool operator==(const EcdsaSignature&, const EcdsaSignature&) = default;
};

/// f(P): the group's coordinate projection reduced mod q.
Scalar conversion(const GroupElement& p);
/// h(m) = hash_to_scalar("ecdsa/msg/v1", m).
Scalar message_hash(const Group& group, ByteView message);

/// pSign. The nonce k is derived from (x, m, Y, seed) and resampled until
/// r != 0 and ŝ != 0. Throws Error(kInvalidStatement) if π_Y does not verify.
EcdsaPreSignature p_sign(const EcdsaKeyPair& kp, ByteView message, const Statement& stmt, ByteView seed);
/// pSign with a caller-chosen nonce; throws kInvalidArgument if it yields r == 0 or ŝ == 0.
EcdsaPreSignature p_sign_with_nonce(const EcdsaKeyPair& kp, ByteView message, const Statement& stmt,
                                    const Scalar& k, ByteView proof_seed);

/// pVrfy: 0 if π_Z fails, else r == f(ŝ⁻¹(h(m)·Y + r·Z)).
bool p_vrfy(const GroupElement& Q, ByteView message, const Statement& stmt, const EcdsaPreSignature& presig);

/// s = ŝ·y⁻¹. Throws Error(kZeroWitness) for y == 0.
EcdsaSignature adapt(const EcdsaPreSignature& presig, const Scalar& y);

/// y = ŝ/s if y·G == Y, otherwise nullopt.
std::optional<Scalar> extract(const EcdsaSignature& sig, const EcdsaPreSignature& presig,
                              const Statement& stmt);

/// Textbook ECDSA verification with f and h above; no low-s rule.
bool ecdsa_verify(const GroupElement& Q, ByteView message, const EcdsaSignature& sig);

} // namespace mpswap::ecdsa
