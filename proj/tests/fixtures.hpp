#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mpswap/acc/rsa_accumulator.hpp"
#include "mpswap/chain/chain.hpp"
#include "mpswap/crypto/drbg.hpp"
#include "mpswap/swap/accumulators.hpp"
#include "mpswap/swap/session.hpp"

namespace mpswap::fixture {

const acc::RsaParams& toy();

/// N parties P1..PN on chain-1..chain-N with sessions ready for the ring.
struct Ring {
    swap::SwapTerms terms;
    std::shared_ptr<swap::SwapAccumulators> hub;
    std::vector<schnorr::KeyPair> keys;
    std::vector<swap::SwapSession> sessions;

    static Ring make(std::size_t n, const Group& group, const acc::RsaParams& params, std::string_view seed,
                     swap::SwapMode mode = swap::SwapMode::kAccumulated);

    /// Runs the ring honestly; returns the bundle each position received
    /// (index 0 holds the complete bundle returned to the initiator).
    std::vector<swap::PreSigBundle> run_ring();
};

/// One chain per position with its lock placed and the session attached.
struct Chains {
    std::vector<std::unique_ptr<chain::Chain>> owned;
    std::vector<chain::Chain*> ptrs;

    static Chains make(const Ring& ring, std::uint64_t expiry);
    chain::Chain& at(std::size_t i) { return *owned[i]; }
};

} // namespace mpswap::fixture
