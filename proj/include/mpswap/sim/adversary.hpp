#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpswap/chain/chain.hpp"
#include "mpswap/crypto/drbg.hpp"
#include "mpswap/schnorr/adaptor.hpp"
#include "mpswap/swap/accumulators.hpp"
#include "mpswap/swap/session.hpp"

namespace mpswap::sim {

enum class DropPoint { kBeforePreSign, kAfterPreSign };

/// What one party does in a scenario.
struct Behavior {
    enum class Kind {
        kHonest,
        kDropoutAfterFinalize,  // takes its ring step, never claims
        kDropoutBeforeFinalize, // stops in the ring at `drop`
        kSkipper,               // forwards its bundle past positions up to `target`
        kImpersonator,          // tries to claim `target`'s lock before claiming its own
        kLeaker,                // publishes its outgoing bundle; an outsider and it try to claim early
        kColluder,              // pools keys with every other colluder and tries to divert honest locks
    };

    Kind kind = Kind::kHonest;
    DropPoint drop = DropPoint::kBeforePreSign;
    std::size_t target = 0;

    static Behavior honest() { return {}; }
    static Behavior dropout_after_finalize() { return {Kind::kDropoutAfterFinalize, {}, 0}; }
    static Behavior dropout_before_finalize(DropPoint at) { return {Kind::kDropoutBeforeFinalize, at, 0}; }
    static Behavior skipper(std::size_t target) { return {Kind::kSkipper, {}, target}; }
    static Behavior impersonator(std::size_t victim) { return {Kind::kImpersonator, {}, victim}; }
    static Behavior leaker() { return {Kind::kLeaker, {}, 0}; }
    static Behavior colluder() { return {Kind::kColluder, {}, 0}; }

    bool is_honest() const { return kind == Kind::kHonest; }

    /// honest, dropout-after-finalize, dropout-before-presign,
    /// dropout-after-presign, skipper:<k>, impersonator:<k>, leaker, colluder
    std::string name() const;
    static std::optional<Behavior> parse(std::string_view text);

    friend bool operator==(const Behavior&, const Behavior&) = default;
};

/// One adversarial transaction and how the chain answered.
struct Attempt {
    std::string actor;
    std::string label;
    std::string chain_id;
    std::uint64_t height = 0;
    chain::ChainTx tx;
    chain::SubmitResult result;
};

/// The chains of one session, indexed by ring position.
using ChainSet = std::vector<chain::Chain*>;

/// Builds an honest claim for a completed party, with witnesses from the hub.
chain::ChainTx make_claim(const swap::SwapTerms& terms, const swap::SwapAccumulators& hub, std::size_t pos,
                          const schnorr::FullSignature& sig, const schnorr::PreSignature& presig);

/// A signature under `key` that passes s·G == R + T + c·pk for any T without
/// knowing t, by choosing R = R' − T. It cannot be tied to an accumulated
/// pre-signature.
schnorr::FullSignature forge_without_secret(const schnorr::KeyPair& key, const GroupElement& T,
                                            const schnorr::ChallengeBinding& binding, ByteView message,
                                            std::string party_id, Drbg& rng);

/// An outsider (eve, not in Acc_A) tries to take the victim's lock: a forged
/// claim carrying the victim's key witness, one with a random witness, and
/// replays of the victim's accepted claim if one is on chain.
std::vector<Attempt> impersonation_attempt(const schnorr::KeyPair& eve, std::size_t victim,
                                           const swap::SwapTerms& terms, const swap::SwapAccumulators& hub,
                                           const ChainSet& chains, Drbg& rng);

/// Before finalization, an adversary holding the leaked bundle (every
/// pre-signature in it plus T) tries to get any claim accepted. With an
/// insider the adversary also holds that party's signing key.
std::vector<Attempt> leak_attempt(const swap::PreSigBundle& leaked, const swap::SwapTerms& terms,
                                  const swap::SwapAccumulators& hub, const ChainSet& chains, Drbg& rng,
                                  const std::optional<std::pair<std::size_t, schnorr::KeyPair>>& insider);

/// After t is public, colluders pooling their keys try to divert the lock of
/// honest party `victim`.
std::vector<Attempt> collusion_attempt(const std::vector<std::pair<std::size_t, schnorr::KeyPair>>& pool,
                                       std::size_t victim, const swap::SwapTerms& terms,
                                       const swap::SwapAccumulators& hub, const ChainSet& chains,
                                       const Scalar& t, Drbg& rng);

} // namespace mpswap::sim
