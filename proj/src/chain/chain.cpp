#include "mpswap/chain/chain.hpp"

#include <array>

#include "mpswap/crypto/hash.hpp"
#include "mpswap/error.hpp"

namespace mpswap::chain {

namespace {

constexpr std::array<std::string_view, 12> kReasonNames = {
    "unknown-session",  "pk-not-in-accumulator", "presig-not-in-accumulator", "challenge-mismatch",
    "bad-signature",    "presig-mismatch",       "wrong-chain",               "no-live-lock",
    "lock-spent",       "lock-expired",          "lock-mismatch",             "beneficiary-mismatch",
};

void write_witness(ByteWriter& w, const acc::RsaParams& params, const std::optional<acc::MembershipWitness>& wit) {
    if (!wit) {
        w.u8(0);
        return;
    }
    w.u8(1).var(wit->encode(params));
}

std::optional<acc::MembershipWitness> read_witness(ByteReader& r, const acc::RsaParams& params) {
    auto flag = r.u8();
    if (flag == 0) return std::nullopt;
    if (flag != 1) throw Error(Errc::kDecode, "bad witness flag");
    return acc::MembershipWitness::decode(params, r.var());
}

} // namespace

std::string_view reason_name(RejectReason reason) { return kReasonNames[static_cast<std::size_t>(reason)]; }

std::optional<RejectReason> parse_reason(std::string_view name) {
    for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
        if (kReasonNames[i] == name) return static_cast<RejectReason>(i);
    }
    return std::nullopt;
}

Bytes ChainTx::encode(const acc::RsaParams& params) const {
    ByteWriter w;
    w.str(session_id).var(message.encode()).raw(signer_pk.encode()).var(sig.encode()).var(presig.encode());
    write_witness(w, params, pk_witness);
    write_witness(w, params, presig_witness);
    return std::move(w).take();
}

ChainTx ChainTx::decode(const Group& group, const acc::RsaParams& params, ByteView data) {
    ByteReader r(data);
    ChainTx tx;
    tx.session_id = r.str();
    tx.message = swap::SwapMessage::decode(group, r.var());
    tx.signer_pk = group.decode_element(r.raw(group.element_bytes()));
    tx.sig = schnorr::FullSignature::decode(group, r.var());
    tx.presig = schnorr::PreSignature::decode(group, r.var());
    tx.pk_witness = read_witness(r, params);
    tx.presig_witness = read_witness(r, params);
    r.expect_done();
    return tx;
}

CryptoContext CryptoContext::of(const swap::SwapAccumulators& hub) {
    return {&hub.params(), hub.mode(), hub.keys_digest(), hub.msgs_digest(), hub.presig_digest()};
}

schnorr::ChallengeBinding CryptoContext::binding() const {
    if (mode == swap::SwapMode::kDirect) return schnorr::ChallengeBinding::direct();
    return schnorr::ChallengeBinding::accumulated(*params, keys, msgs);
}

std::optional<RejectReason> check_tx_crypto(const ChainTx& tx, const CryptoContext& ctx) {
    if (ctx.mode == swap::SwapMode::kAccumulated) {
        if (!tx.pk_witness || !acc::verify_membership(*ctx.params, ctx.keys, tx.signer_pk.encode(), *tx.pk_witness)) {
            return RejectReason::kPkNotInAccumulator;
        }
        if (!tx.presig_witness ||
            !acc::verify_membership(*ctx.params, ctx.presigs, tx.presig.encode(), *tx.presig_witness)) {
            return RejectReason::kPreSigNotInAccumulator;
        }
    }
    const auto& sig = tx.sig;
    if (schnorr::compute_challenge(sig.R, sig.T, tx.signer_pk, ctx.binding(), tx.message.encode()) != sig.c) {
        return RejectReason::kChallengeMismatch;
    }
    if (!schnorr::verify_full(sig, tx.signer_pk)) return RejectReason::kBadSignature;
    const auto& ps = tx.presig;
    if (ps.party_id != sig.party_id || ps.c != sig.c || ps.R != sig.R || ps.T != sig.T ||
        tx.signer_pk.group().mul_base(sig.s - ps.s_pre) != sig.T) {
        return RejectReason::kPreSigMismatch;
    }
    return std::nullopt;
}

Bytes LockRecord::encode() const {
    ByteWriter w;
    w.str(lock_id).str(asset).u64(amount).raw(owner.encode()).raw(beneficiary.encode()).str(session_id).u64(expiry);
    return std::move(w).take();
}

std::string_view event_kind_name(EventKind kind) {
    switch (kind) {
    case EventKind::kLock: return "lock";
    case EventKind::kClaim: return "claim";
    case EventKind::kRefund: return "refund";
    }
    return "unknown";
}

std::string ChainEvent::format() const {
    auto h = sha256(payload);
    return chain_id + " " + std::to_string(height) + " " + std::string(event_kind_name(kind)) + " " + ref + " " +
           to_hex(h);
}

void Chain::attach_session(const std::string& session_id, std::shared_ptr<const swap::SwapAccumulators> hub) {
    sessions_[session_id] = std::move(hub);
}

std::string Chain::lock_asset(const LockRecord& record) {
    if (locks_.count(record.lock_id) != 0) throw Error(Errc::kAlreadyLocked, "lock id in use: " + record.lock_id);
    for (const auto& [id, entry] : locks_) {
        if (entry.state == LockState::kLive && entry.record.asset == record.asset &&
            entry.record.owner == record.owner) {
            throw Error(Errc::kAlreadyLocked, "asset already locked: " + record.asset);
        }
    }
    locks_.emplace(record.lock_id, LockEntry{record, LockState::kLive});
    lock_order_.push_back(record.lock_id);
    events_.push_back({id_, height_, EventKind::kLock, record.lock_id, record.encode(), std::nullopt});
    return record.lock_id;
}

std::optional<LockState> Chain::lock_state(std::string_view lock_id) const {
    auto it = locks_.find(lock_id);
    if (it == locks_.end()) return std::nullopt;
    return it->second.state;
}

const LockRecord* Chain::lock(std::string_view lock_id) const {
    auto it = locks_.find(lock_id);
    return it == locks_.end() ? nullptr : &it->second.record;
}

std::optional<RejectReason> Chain::verify_tx(const ChainTx& tx) const {
    auto session = sessions_.find(tx.session_id);
    if (session == sessions_.end()) return RejectReason::kUnknownSession;
    if (auto reason = check_tx_crypto(tx, CryptoContext::of(*session->second))) return reason;

    const auto& m = tx.message;
    if (m.chain_id != id_) return RejectReason::kWrongChain;
    auto it = locks_.find(m.lock_ref);
    if (it == locks_.end()) return RejectReason::kNoLiveLock;
    const auto& [rec, state] = it->second;
    if (state == LockState::kClaimed) return RejectReason::kLockSpent;
    if (state == LockState::kRefunded || height_ >= rec.expiry) return RejectReason::kLockExpired;
    if (rec.session_id != tx.session_id || rec.asset != m.asset || rec.amount != m.amount || rec.owner != m.payer) {
        return RejectReason::kLockMismatch;
    }
    if (rec.beneficiary != m.payee || tx.signer_pk != rec.beneficiary) return RejectReason::kBeneficiaryMismatch;
    return std::nullopt;
}

SubmitResult Chain::submit_tx(const ChainTx& tx) {
    if (auto reason = verify_tx(tx)) {
        const auto& params = sessions_.count(tx.session_id) ? sessions_.at(tx.session_id)->params() : acc::RsaParams{};
        Bytes hash;
        if (params.modulus > 0) {
            auto h = sha256(tx.encode(params));
            hash.assign(h.begin(), h.end());
        }
        rejections_.push_back({height_, *reason, hash});
        return {false, reason};
    }
    locks_.find(tx.message.lock_ref)->second.state = LockState::kClaimed;
    pending_.push_back(tx);
    ++accepted_;
    return {true, std::nullopt};
}

std::uint64_t Chain::advance_height(std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) {
        ++height_;
        for (auto& tx : pending_) {
            const auto& params = sessions_.at(tx.session_id)->params();
            events_.push_back({id_, height_, EventKind::kClaim, tx.message.lock_ref, tx.encode(params), std::move(tx)});
        }
        pending_.clear();
        for (const auto& lock_id : lock_order_) {
            auto& entry = locks_.find(lock_id)->second;
            if (entry.state == LockState::kLive && entry.record.expiry <= height_) {
                entry.state = LockState::kRefunded;
                events_.push_back({id_, height_, EventKind::kRefund, lock_id, to_bytes(lock_id), std::nullopt});
            }
        }
    }
    return height_;
}

std::vector<ChainEvent> Chain::observe(std::uint64_t from_height) const {
    std::vector<ChainEvent> out;
    for (const auto& e : events_) {
        if (e.height >= from_height) out.push_back(e);
    }
    return out;
}

std::vector<std::string> Chain::event_log() const {
    std::vector<std::string> out;
    out.reserve(events_.size());
    for (const auto& e : events_) out.push_back(e.format());
    return out;
}

} // namespace mpswap::chain
