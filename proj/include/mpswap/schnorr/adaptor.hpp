#pragma once

#include <optional>
#include <string>

#include "mpswap/acc/rsa_accumulator.hpp"
#include "mpswap/bytes.hpp"
#include "mpswap/crypto/group.hpp"

namespace mpswap::schnorr {

struct KeyPair {
    Scalar sk;        // a_i
    GroupElement pk;  // A_i = a_i·G

    static KeyPair from_secret(const Scalar& sk);
    static KeyPair derive(const Group& group, ByteView seed);
};

struct NoncePair {
    Scalar r;
    GroupElement R;

    static NoncePair derive(const Group& group, ByteView seed);
};

/// A nonce that can be taken exactly once; a second take() throws
/// Error(kNonceReuse). The public R stays readable.
class OneTimeNonce {
  public:
    explicit OneTimeNonce(NoncePair nonce) : R_(nonce.R), nonce_(std::move(nonce)) {}

    const GroupElement& R() const { return R_; }
    bool consumed() const { return !nonce_.has_value(); }
    NoncePair take();

  private:
    GroupElement R_;
    std::optional<NoncePair> nonce_;
};

/// The universal adaptor secret held by the initiator.
struct AdaptorSecret {
    Scalar t;
    GroupElement T;

    static AdaptorSecret derive(const Group& group, ByteView seed);
};

/// s_pre = r + c·a, awaiting the adaptor offset t.
struct PreSignature {
    std::string party_id;
    Scalar c;
    Scalar s_pre;
    GroupElement R;
    GroupElement T;

    /// party_id (u32-length-prefixed), c, s_pre, R, T; fixed-width fields.
    Bytes encode() const;
    static PreSignature decode(const Group& group, ByteView data);
    friend bool operator==(const PreSignature&, const PreSignature&) = default;
};

/// s = s_pre + t; verifies as s·G == R + T + c·pk.
struct FullSignature {
    std::string party_id;
    Scalar c;
    Scalar s;
    GroupElement R;
    GroupElement T;

    Bytes encode() const;
    static FullSignature decode(const Group& group, ByteView data);
    friend bool operator==(const FullSignature&, const FullSignature&) = default;
};

/// What the challenge hash binds besides (R + T, pk, m).
///
/// kDirect is the two-party form H(R + T ‖ A ‖ m). kAccumulated adds the
/// public-key and message accumulator digests. The mode is hashed in, so the
/// two forms never collide.
class ChallengeBinding {
  public:
    enum class Mode : std::uint8_t { kDirect = 1, kAccumulated = 2 };

    static ChallengeBinding direct() { return ChallengeBinding(Mode::kDirect, {}, {}); }
    static ChallengeBinding accumulated(const acc::RsaParams& params, const acc::Digest& keys,
                                        const acc::Digest& msgs) {
        return ChallengeBinding(Mode::kAccumulated, keys.encode(params), msgs.encode(params));
    }

    Mode mode() const { return mode_; }
    const Bytes& keys_digest() const { return keys_; }
    const Bytes& msgs_digest() const { return msgs_; }

  private:
    ChallengeBinding(Mode mode, Bytes keys, Bytes msgs)
        : mode_(mode), keys_(std::move(keys)), msgs_(std::move(msgs)) {}

    Mode mode_;
    Bytes keys_;
    Bytes msgs_;
};

/// c = H("swap/challenge/v1"; mode, R + T, pk, [Acc_A, Acc_m,] m).
Scalar compute_challenge(const GroupElement& R, const GroupElement& T, const GroupElement& pk,
                         const ChallengeBinding& binding, ByteView message);

/// s' = r + c·a.
Scalar pre_sign(const KeyPair& kp, const NoncePair& nonce, const Scalar& c);

/// s_pre·G == R + c·pk.
bool pre_verify(const PreSignature& ps, const GroupElement& pk);

/// s = s_pre + t.
Scalar adapt(const Scalar& s_pre, const Scalar& t);

/// s·G == R + T + c·pk.
bool verify_full(const FullSignature& fs, const GroupElement& pk);

/// t = s - s_pre.
Scalar extract_secret(const Scalar& s_full, const Scalar& s_pre);

/// Completes a pre-signature with t, carrying the other fields over.
FullSignature complete(const PreSignature& ps, const Scalar& t);

} // namespace mpswap::schnorr
