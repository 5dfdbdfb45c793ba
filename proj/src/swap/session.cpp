#include "mpswap/swap/session.hpp"

#include "mpswap/crypto/drbg.hpp"
#include "mpswap/error.hpp"

namespace mpswap::swap {

std::string_view phase_name(Phase phase) {
    switch (phase) {
    case Phase::kInit: return "init";
    case Phase::kCollecting: return "collecting";
    case Phase::kReadyToFinalize: return "ready-to-finalize";
    case Phase::kFinalized: return "finalized";
    case Phase::kCompleted: return "completed";
    case Phase::kAborted: return "aborted";
    }
    return "unknown";
}

Bytes PreSigBundle::encode() const {
    ByteWriter w;
    w.str(session_id).raw(T.encode()).u32(static_cast<std::uint32_t>(entries.size()));
    for (const auto& e : entries) w.var(e.encode());
    return std::move(w).take();
}

PreSigBundle PreSigBundle::decode(const Group& group, ByteView data) {
    ByteReader r(data);
    PreSigBundle b;
    b.session_id = r.str();
    b.T = group.decode_element(r.raw(group.element_bytes()));
    auto n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) b.entries.push_back(schnorr::PreSignature::decode(group, r.var()));
    r.expect_done();
    return b;
}

SessionContext SwapSession::context() const {
    return {hub_->keys_digest(), hub_->msgs_digest(), hub_->presig_digest(), T_};
}

void SwapSession::check_bundle(const PreSigBundle& bundle, std::size_t expected, Errc missing) const {
    if (bundle.session_id != terms_.session_id) throw Error(Errc::kMalformedBundle, "bundle for another session");
    std::vector<const schnorr::PreSignature*> by_pos(terms_.size(), nullptr);
    for (const auto& e : bundle.entries) {
        auto pos = terms_.position_of(e.party_id);
        if (!pos) throw Error(Errc::kMalformedBundle, "entry from unknown party " + e.party_id);
        if (by_pos[*pos] != nullptr) throw Error(Errc::kMalformedBundle, "duplicate entry for " + e.party_id);
        by_pos[*pos] = &e;
    }
    for (std::size_t j = 0; j < expected; ++j) {
        if (by_pos[j] == nullptr) {
            throw Error(missing, "no pre-signature from " + terms_.parties[j].id);
        }
    }
    if (bundle.entries.size() != expected) throw Error(Errc::kMalformedBundle, "entries beyond the sender");
    for (std::size_t j = 0; j < expected; ++j) {
        if (&bundle.entries[j] != by_pos[j]) throw Error(Errc::kMalformedBundle, "entries out of ring order");
    }
    if (bundle.T.is_identity()) throw Error(Errc::kMalformedBundle, "adaptor point is the identity");
    if (T_ && bundle.T != *T_) throw Error(Errc::kMalformedBundle, "adaptor point differs from the session's");

    const auto binding = hub_->binding();
    for (std::size_t j = 0; j < expected; ++j) {
        const auto& e = bundle.entries[j];
        const auto& pk = terms_.parties[j].pk;
        if (e.T != bundle.T) throw Error(Errc::kMalformedBundle, "entry uses a different adaptor point");
        if (schnorr::compute_challenge(e.R, e.T, pk, binding, terms_.messages[j].encode()) != e.c) {
            throw Error(Errc::kChallengeMismatch, "challenge of " + e.party_id + " does not recompute");
        }
        if (!schnorr::pre_verify(e, pk)) {
            throw Error(Errc::kBadPreSignature, "pre-signature of " + e.party_id + " does not verify");
        }
        if (!hub_->has_presig(e)) {
            throw Error(Errc::kUnknownPreSignature, "pre-signature of " + e.party_id + " is not accumulated");
        }
    }
}

schnorr::PreSignature SwapSession::sign_own(const GroupElement& T) {
    auto nonce = nonce_.take();
    const auto& msg = terms_.messages[position_].encode();
    auto c = schnorr::compute_challenge(nonce.R, T, key_.pk, hub_->binding(), msg);
    schnorr::PreSignature ps{me().id, c, schnorr::pre_sign(key_, nonce, c), nonce.R, T};
    hub_->register_presig(ps);
    own_presig_ = ps;
    T_ = T;
    return ps;
}

SwapSession session_init(const SwapTerms& terms, std::shared_ptr<SwapAccumulators> hub,
                         const schnorr::KeyPair& me, ByteView seed) {
    terms.validate();
    if (!hub) throw Error(Errc::kInvalidArgument, "no accumulator manager");
    std::optional<std::size_t> position;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms.parties[i].pk == me.pk) position = i;
    }
    if (!position) throw Error(Errc::kInvalidArgument, "key does not belong to a session party");
    const auto& group = terms.group();
    auto nonce = schnorr::NoncePair::derive(group, derive_seed(seed, "session/nonce"));
    SwapSession s(terms, std::move(hub), *position, me, schnorr::OneTimeNonce(std::move(nonce)));
    if (*position == 0) {
        auto secret = schnorr::AdaptorSecret::derive(group, derive_seed(seed, "session/adaptor"));
        s.T_ = secret.T;
        s.t_ = secret.t;
    }
    return s;
}

PreSigBundle initiator_start(SwapSession& s) {
    if (!s.is_initiator()) throw Error(Errc::kNotInitiator, "only ring position 0 starts the swap");
    if (s.phase_ != Phase::kInit) throw Error(Errc::kWrongPhase, "swap already started");
    auto ps = s.sign_own(*s.T_);
    s.collected_ = {ps};
    s.phase_ = Phase::kCollecting;
    return {s.terms_.session_id, *s.T_, s.collected_};
}

PreSigBundle participant_step(SwapSession& s, const PreSigBundle& incoming) {
    if (s.is_initiator()) throw Error(Errc::kWrongPhase, "the initiator does not take a ring step");
    if (s.phase_ != Phase::kInit) throw Error(Errc::kWrongPhase, "ring step already taken");
    s.check_bundle(incoming, s.position_, Errc::kMissingPredecessor);
    s.collected_ = incoming.entries;
    s.collected_.push_back(s.sign_own(incoming.T));
    s.phase_ = Phase::kCollecting;
    return {s.terms_.session_id, incoming.T, s.collected_};
}

schnorr::FullSignature finalize(SwapSession& s, const PreSigBundle& complete) {
    if (!s.is_initiator()) throw Error(Errc::kNotInitiator, "only the initiator finalizes");
    if (s.phase_ != Phase::kCollecting) throw Error(Errc::kWrongPhase, "finalize needs a started ring");
    s.check_bundle(complete, s.terms_.size(), Errc::kIncompleteBundle);
    if (complete.entries.front() != *s.own_presig_) {
        throw Error(Errc::kMalformedBundle, "bundle does not carry the initiator's pre-signature");
    }
    s.collected_ = complete.entries;
    s.phase_ = Phase::kReadyToFinalize;
    s.own_full_ = schnorr::complete(*s.own_presig_, *s.t_);
    s.phase_ = Phase::kFinalized;
    return *s.own_full_;
}

schnorr::FullSignature observe_and_complete(SwapSession& s, const schnorr::FullSignature& observed,
                                            const schnorr::PreSignature& observed_presig) {
    if (s.phase_ == Phase::kCompleted || s.phase_ == Phase::kAborted || s.phase_ == Phase::kReadyToFinalize) {
        throw Error(Errc::kWrongPhase, std::string("cannot complete from phase ") +
                                           std::string(phase_name(s.phase_)));
    }
    const auto& ps = observed_presig;
    const auto& T = s.T_ ? *s.T_ : ps.T;
    if (observed.party_id != ps.party_id || observed.c != ps.c || observed.R != ps.R || observed.T != T ||
        ps.T != T) {
        throw Error(Errc::kSecretMismatch, "observed pair does not belong to this session's adaptor point");
    }
    auto t = schnorr::extract_secret(observed.s, ps.s_pre);
    if (s.terms_.group().mul_base(t) != T) throw Error(Errc::kSecretMismatch, "extracted t does not match T");
    if (!s.hub_->has_presig(ps)) throw Error(Errc::kUnknownPreSignature, "observed pre-signature is not accumulated");
    if (!s.own_presig_) s.sign_own(T);
    s.t_ = t;
    s.own_full_ = schnorr::complete(*s.own_presig_, t);
    s.phase_ = Phase::kCompleted;
    return *s.own_full_;
}

void abort_session(SwapSession& s) {
    if (s.phase_ != Phase::kCompleted) s.phase_ = Phase::kAborted;
}

} // namespace mpswap::swap
