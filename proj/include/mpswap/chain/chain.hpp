#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpswap/acc/rsa_accumulator.hpp"
#include "mpswap/schnorr/adaptor.hpp"
#include "mpswap/swap/accumulators.hpp"
#include "mpswap/swap/terms.hpp"

namespace mpswap::chain {

/// Why verify_tx refused a transaction. Listed in checking order.
enum class RejectReason {
    kUnknownSession,
    kPkNotInAccumulator,     // (1)
    kPreSigNotInAccumulator, // (2)
    kChallengeMismatch,      // (3)
    kBadSignature,           // (4)
    kPreSigMismatch,         // (5) (s − s_pre)·G ≠ T or fields differ
    kWrongChain,             // (6) and below: the lock being spent
    kNoLiveLock,
    kLockSpent,
    kLockExpired,
    kLockMismatch,
    kBeneficiaryMismatch,
};

std::string_view reason_name(RejectReason reason);
std::optional<RejectReason> parse_reason(std::string_view name);

/// A claim: m_i signed by the claimer, with the pre-signature it completes
/// and membership witnesses (absent in direct mode).
struct ChainTx {
    std::string session_id;
    swap::SwapMessage message;
    GroupElement signer_pk;
    schnorr::FullSignature sig;
    schnorr::PreSignature presig;
    std::optional<acc::MembershipWitness> pk_witness;
    std::optional<acc::MembershipWitness> presig_witness;

    Bytes encode(const acc::RsaParams& params) const;
    static ChainTx decode(const Group& group, const acc::RsaParams& params, ByteView data);
};

/// The public inputs of clauses (1)–(5).
struct CryptoContext {
    const acc::RsaParams* params = nullptr;
    swap::SwapMode mode = swap::SwapMode::kAccumulated;
    acc::Digest keys;
    acc::Digest msgs;
    acc::Digest presigs;

    static CryptoContext of(const swap::SwapAccumulators& hub);
    schnorr::ChallengeBinding binding() const;
};

/// Clauses (1)–(5), independent of chain state. Direct mode skips (1) and (2).
std::optional<RejectReason> check_tx_crypto(const ChainTx& tx, const CryptoContext& ctx);

struct LockRecord {
    std::string lock_id;
    std::string asset;
    std::uint64_t amount = 0;
    GroupElement owner;
    GroupElement beneficiary;
    std::string session_id;
    std::uint64_t expiry = 0;

    Bytes encode() const;
};

enum class LockState { kLive, kClaimed, kRefunded };

enum class EventKind { kLock, kClaim, kRefund };

std::string_view event_kind_name(EventKind kind);

struct ChainEvent {
    std::string chain_id;
    std::uint64_t height = 0;
    EventKind kind = EventKind::kLock;
    std::string ref;            // lock id
    Bytes payload;              // lock record, claim tx or refunded lock id
    std::optional<ChainTx> tx;  // claims only

    /// "<chain> <height> <kind> <ref> <sha256(payload) hex>"
    std::string format() const;
};

struct SubmitResult {
    bool accepted = false;
    std::optional<RejectReason> reason;
};

struct Rejection {
    std::uint64_t height;
    RejectReason reason;
    Bytes tx_hash;
};

// One simulated chain. Claims are checked at submission and consume their
// lock immediately; the claim event lands in the next block. Locks past
// their expiry height are refunded to the owner when that block is made.
class Chain {
  public:
    explicit Chain(std::string id) : id_(std::move(id)) {}

    const std::string& id() const { return id_; }
    std::uint64_t height() const { return height_; }

    /// Read-only access to a session's accumulators.
    void attach_session(const std::string& session_id, std::shared_ptr<const swap::SwapAccumulators> hub);

    /// Throws Error(kAlreadyLocked) for a reused lock id or an asset under a live lock.
    std::string lock_asset(const LockRecord& record);
    std::optional<LockState> lock_state(std::string_view lock_id) const;
    const LockRecord* lock(std::string_view lock_id) const;

    /// First failing clause, or nullopt if the tx would be accepted now.
    std::optional<RejectReason> verify_tx(const ChainTx& tx) const;
    SubmitResult submit_tx(const ChainTx& tx);

    /// Makes n blocks; returns the new height.
    std::uint64_t advance_height(std::uint64_t n = 1);

    /// Events at heights >= from_height, in block order.
    std::vector<ChainEvent> observe(std::uint64_t from_height) const;
    const std::vector<ChainEvent>& events() const { return events_; }
    std::vector<std::string> event_log() const;

    std::size_t accepted_count() const { return accepted_; }
    const std::vector<Rejection>& rejections() const { return rejections_; }

  private:
    struct LockEntry {
        LockRecord record;
        LockState state = LockState::kLive;
    };

    std::string id_;
    std::uint64_t height_ = 0;
    std::map<std::string, std::shared_ptr<const swap::SwapAccumulators>> sessions_;
    std::map<std::string, LockEntry, std::less<>> locks_;
    std::vector<std::string> lock_order_;
    std::vector<ChainTx> pending_;
    std::vector<ChainEvent> events_;
    std::vector<Rejection> rejections_;
    std::size_t accepted_ = 0;
};

} // namespace mpswap::chain
