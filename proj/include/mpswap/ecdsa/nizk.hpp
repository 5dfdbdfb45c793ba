#pragma once

#include "mpswap/bytes.hpp"
#include "mpswap/crypto/group.hpp"

namespace mpswap::ecdsa {

// Fiat-Shamir Schnorr proof of knowledge of y with Y = y·G. Compact form:
// the verifier recomputes the commitment from (challenge, response).
struct DlogProof {
    Scalar challenge;
    Scalar response;

    Bytes encode() const;
    static DlogProof decode(const Group& group, ByteView data);
    friend bool operator==(const DlogProof&, const DlogProof&) = default;
};

DlogProof dlog_prove(const Scalar& y, const GroupElement& Y, ByteView nonce_seed);
bool dlog_verify(const GroupElement& Y, const DlogProof& proof);

// Chaum-Pedersen proof that log_base1(pub1) == log_base2(pub2), domain "dleq/v1".
struct DleqProof {
    Scalar challenge;
    Scalar response;

    Bytes encode() const;
    static DleqProof decode(const Group& group, ByteView data);
    friend bool operator==(const DleqProof&, const DleqProof&) = default;
};

DleqProof dleq_prove(const Scalar& x, const GroupElement& base1, const GroupElement& pub1,
                     const GroupElement& base2, const GroupElement& pub2, ByteView nonce_seed);
bool dleq_verify(const GroupElement& base1, const GroupElement& pub1, const GroupElement& base2,
                 const GroupElement& pub2, const DleqProof& proof);

} // namespace mpswap::ecdsa
