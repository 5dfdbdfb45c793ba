#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpswap/bytes.hpp"
#include "mpswap/crypto/group.hpp"

namespace mpswap::swap {

/// A participant in ring order. chain_id names the chain on which this
/// party claims its incoming asset.
struct PartyInfo {
    std::string id;
    GroupElement pk;
    std::string chain_id;
};

/// m_i: the claim transaction of party i on chain_i, spending the lock that
/// the ring predecessor (payer) placed for it (payee).
struct SwapMessage {
    std::string chain_id;
    std::string asset;
    std::uint64_t amount = 0;
    GroupElement payer;
    GroupElement payee;
    std::string lock_ref;

    Bytes encode() const;
    static SwapMessage decode(const Group& group, ByteView data);
    friend bool operator==(const SwapMessage&, const SwapMessage&) = default;
};

/// kDirect is the two-party form without accumulators; only valid for N == 2.
enum class SwapMode { kDirect, kAccumulated };

std::string_view mode_name(SwapMode mode);
std::optional<SwapMode> parse_mode(std::string_view name);

/// Pre-matched terms. Position 0 is the initiator; the ring runs 0 → 1 → … → N−1 → 0.
struct SwapTerms {
    std::string session_id;
    SwapMode mode = SwapMode::kAccumulated;
    std::vector<PartyInfo> parties;
    std::vector<SwapMessage> messages;

    std::size_t size() const { return parties.size(); }
    const Group& group() const { return parties.front().pk.group(); }
    std::optional<std::size_t> position_of(std::string_view party_id) const;
    std::size_t payer_of(std::size_t pos) const { return (pos + size() - 1) % size(); }

    /// Throws kEmptySession (N < 2), kDuplicateParty (repeated id or pk) or
    /// kInvalidTerms (message count, chain, payer or payee mismatch).
    void validate() const;
};

/// What the payer of position i owes it.
struct Asset {
    std::string id;
    std::uint64_t amount = 0;
};

/// Builds terms for a cyclic swap: party i claims owed[i] on its chain,
/// paid by party i−1. lock_ref is "<session>/<chain>".
SwapTerms make_ring_terms(std::string session_id, SwapMode mode, std::vector<PartyInfo> parties,
                          const std::vector<Asset>& owed);

} // namespace mpswap::swap
