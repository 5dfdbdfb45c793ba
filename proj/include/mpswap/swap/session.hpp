#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpswap/error.hpp"
#include "mpswap/schnorr/adaptor.hpp"
#include "mpswap/swap/accumulators.hpp"
#include "mpswap/swap/terms.hpp"

namespace mpswap::swap {

enum class Phase { kInit, kCollecting, kReadyToFinalize, kFinalized, kCompleted, kAborted };

std::string_view phase_name(Phase phase);

/// Cumulative ring message: T and the pre-signatures of positions 0..i−1 in order.
struct PreSigBundle {
    std::string session_id;
    GroupElement T;
    std::vector<schnorr::PreSignature> entries;

    Bytes encode() const;
    static PreSigBundle decode(const Group& group, ByteView data);
    friend bool operator==(const PreSigBundle&, const PreSigBundle&) = default;
};

struct SessionContext {
    acc::Digest acc_keys;
    acc::Digest acc_msgs;
    acc::Digest presig_acc;
    std::optional<GroupElement> T;
};

// One party's view of a swap. Owned by that party; other parties only see the
// bundles and signatures it hands out.
class SwapSession {
  public:
    SwapSession(SwapSession&&) = default;
    SwapSession& operator=(SwapSession&&) = default;
    SwapSession(const SwapSession&) = delete;
    SwapSession& operator=(const SwapSession&) = delete;

    const SwapTerms& terms() const { return terms_; }
    std::size_t position() const { return position_; }
    const PartyInfo& me() const { return terms_.parties[position_]; }
    bool is_initiator() const { return position_ == 0; }

    Phase phase() const { return phase_; }
    /// i in Collecting(i): how many ring positions this party has verified or signed.
    std::size_t collected_count() const { return collected_.size(); }
    const std::vector<schnorr::PreSignature>& collected() const { return collected_; }

    const std::optional<schnorr::PreSignature>& own_presig() const { return own_presig_; }
    const std::optional<schnorr::FullSignature>& own_signature() const { return own_full_; }
    const std::optional<GroupElement>& statement() const { return T_; }
    /// t: held by the initiator from the start, by others once extracted.
    const std::optional<Scalar>& secret() const { return t_; }

    SessionContext context() const;
    const SwapAccumulators& accumulators() const { return *hub_; }

  private:
    friend SwapSession session_init(const SwapTerms&, std::shared_ptr<SwapAccumulators>,
                                    const schnorr::KeyPair&, ByteView);
    friend PreSigBundle initiator_start(SwapSession&);
    friend PreSigBundle participant_step(SwapSession&, const PreSigBundle&);
    friend schnorr::FullSignature finalize(SwapSession&, const PreSigBundle&);
    friend schnorr::FullSignature observe_and_complete(SwapSession&, const schnorr::FullSignature&,
                                                       const schnorr::PreSignature&);
    friend void abort_session(SwapSession&);

    SwapSession(SwapTerms terms, std::shared_ptr<SwapAccumulators> hub, std::size_t position,
                schnorr::KeyPair key, schnorr::OneTimeNonce nonce)
        : terms_(std::move(terms)), hub_(std::move(hub)), position_(position), key_(std::move(key)),
          nonce_(std::move(nonce)) {}

    void check_bundle(const PreSigBundle& bundle, std::size_t expected, Errc missing) const;
    schnorr::PreSignature sign_own(const GroupElement& T);

    SwapTerms terms_;
    std::shared_ptr<SwapAccumulators> hub_;
    std::size_t position_;
    schnorr::KeyPair key_;
    schnorr::OneTimeNonce nonce_;
    Phase phase_ = Phase::kInit;
    std::vector<schnorr::PreSignature> collected_;
    std::optional<schnorr::PreSignature> own_presig_;
    std::optional<schnorr::FullSignature> own_full_;
    std::optional<GroupElement> T_;
    std::optional<Scalar> t_;
};

/// Validates the terms and binds the caller's key to its ring position. The
/// nonce (and, for the initiator, the adaptor secret) derive from seed.
/// Throws kEmptySession, kDuplicateParty, kInvalidTerms, or kInvalidArgument
/// when the key is not a session party.
SwapSession session_init(const SwapTerms& terms, std::shared_ptr<SwapAccumulators> hub,
                         const schnorr::KeyPair& me, ByteView seed);

/// Position 0 pre-signs and emits {T, s_1'}. Throws kNotInitiator, kWrongPhase.
PreSigBundle initiator_start(SwapSession& session);

/// Verifies every predecessor entry, appends this party's pre-signature and
/// returns the bundle for the next position. Throws kWrongPhase,
/// kMissingPredecessor, kMalformedBundle, kChallengeMismatch,
/// kBadPreSignature, kUnknownPreSignature.
PreSigBundle participant_step(SwapSession& session, const PreSigBundle& incoming);

/// The initiator checks the complete ring and returns s_1 = s_1' + t.
/// Throws kNotInitiator, kWrongPhase, kIncompleteBundle and the bundle errors.
schnorr::FullSignature finalize(SwapSession& session, const PreSigBundle& complete);

/// Extracts t = s − s' from an observed on-chain pair and completes this
/// party's own pre-signature. A party skipped by the ring signs late here.
/// Throws kSecretMismatch (t·G ≠ T), kUnknownPreSignature, kWrongPhase.
schnorr::FullSignature observe_and_complete(SwapSession& session, const schnorr::FullSignature& observed,
                                            const schnorr::PreSignature& observed_presig);

/// Moves a non-completed session to Aborted.
void abort_session(SwapSession& session);

} // namespace mpswap::swap
