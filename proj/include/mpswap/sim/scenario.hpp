#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpswap/acc/rsa_accumulator.hpp"
#include "mpswap/chain/chain.hpp"
#include "mpswap/error.hpp"
#include "mpswap/sim/adversary.hpp"
#include "mpswap/swap/session.hpp"

namespace mpswap::sim {

enum class Verdict { kAllCompleted, kNoneCompleted, kViolation };

std::string_view verdict_name(Verdict verdict);
std::optional<Verdict> parse_verdict(std::string_view name);

struct ScenarioSpec {
    const Group* group = nullptr;
    acc::RsaParams acc_params;
    std::size_t parties = 3;
    swap::SwapMode mode = swap::SwapMode::kAccumulated;
    std::vector<Behavior> behaviors; // empty: everyone honest
    Bytes seed;
    std::uint64_t base_expiry = 20;  // the initiator's incoming lock
    std::uint64_t claim_window = 10; // every other lock expires this much later

    Behavior behavior(std::size_t pos) const { return behaviors.empty() ? Behavior{} : behaviors[pos]; }
    /// Throws Error(kConfig) for inconsistent settings.
    void validate() const;
};

struct PartyReport {
    std::string id;
    Behavior behavior;
    swap::Phase phase = swap::Phase::kInit;
    bool claimed = false;          // took its incoming asset
    bool outgoing_claimed = false; // its own locked asset went to its successor
    std::map<std::string, std::int64_t> ledger;
    std::optional<Scalar> extracted;
};

struct RingError {
    std::size_t position;
    Errc code;
    std::string detail;
};

struct BundleHop {
    std::size_t from;
    std::size_t to;
    swap::PreSigBundle bundle;
};

/// Every transaction offered to a chain, with the pre-signature digest the
/// chain checked it against.
struct Submission {
    Attempt attempt;
    acc::Digest presig_digest;
};

struct ScenarioOutcome {
    Verdict verdict = Verdict::kViolation;
    swap::SwapTerms terms;
    acc::Digest acc_keys;
    acc::Digest acc_msgs;
    GroupElement T;
    bool finalized = false;
    std::vector<PartyReport> parties;
    std::vector<std::size_t> accepted_per_chain;
    std::vector<RingError> ring_errors;
    std::vector<BundleHop> hops;
    std::vector<schnorr::PreSignature> registered; // registration order
    std::vector<Submission> submissions;
    std::vector<chain::ChainEvent> events;         // chain order, then block order

    /// Submissions from parties acting adversarially.
    std::vector<Attempt> adversarial_attempts() const;
    std::vector<std::string> event_log() const;
};

/// Deterministic run: the same spec always yields the same outcome.
ScenarioOutcome run_scenario(const ScenarioSpec& spec);

/// Per ring position i, the fate of the lock on chain i (the asset owed to i).
struct LockFate {
    bool claimed = false;
    bool refunded = false;
    bool diverted = false; // claimed by someone other than its beneficiary
};

/// AllCompleted iff every honest party claimed its incoming asset,
/// NoneCompleted iff every lock was refunded, VIOLATION otherwise or if an
/// honest party lost its asset without being paid or any lock was diverted.
Verdict compute_verdict(const std::vector<bool>& honest, const std::vector<LockFate>& locks);

} // namespace mpswap::sim
