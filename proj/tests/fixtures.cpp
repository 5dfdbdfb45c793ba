#include "fixtures.hpp"

namespace mpswap::fixture {

const acc::RsaParams& toy() {
    static const acc::RsaParams p = acc::toy_params(as_bytes("test/toy"));
    return p;
}

Ring Ring::make(std::size_t n, const Group& group, const acc::RsaParams& params, std::string_view seed,
                swap::SwapMode mode) {
    Ring r;
    auto root = to_bytes(seed);
    std::vector<swap::PartyInfo> parties;
    std::vector<swap::Asset> owed;
    for (std::size_t i = 0; i < n; ++i) {
        auto tag = std::to_string(i + 1);
        r.keys.push_back(schnorr::KeyPair::derive(group, derive_seed(root, "key/" + tag)));
        parties.push_back({"P" + tag, r.keys.back().pk, "chain-" + tag});
        owed.push_back({"asset-" + tag, 100 + i});
    }
    r.terms = swap::make_ring_terms("fixture-" + std::string(seed), mode, parties, owed);
    r.hub = std::make_shared<swap::SwapAccumulators>(params, r.terms);
    for (std::size_t i = 0; i < n; ++i) {
        r.sessions.push_back(swap::session_init(r.terms, r.hub, r.keys[i], derive_seed(root, "session/" + std::to_string(i))));
    }
    return r;
}

std::vector<swap::PreSigBundle> Ring::run_ring() {
    std::vector<swap::PreSigBundle> received(sessions.size());
    auto bundle = swap::initiator_start(sessions[0]);
    for (std::size_t i = 1; i < sessions.size(); ++i) {
        received[i] = bundle;
        bundle = swap::participant_step(sessions[i], bundle);
    }
    received[0] = bundle;
    return received;
}

Chains Chains::make(const Ring& ring, std::uint64_t expiry) {
    Chains c;
    for (std::size_t i = 0; i < ring.terms.size(); ++i) {
        const auto& m = ring.terms.messages[i];
        c.owned.push_back(std::make_unique<chain::Chain>(m.chain_id));
        c.owned.back()->attach_session(ring.terms.session_id, ring.hub);
        c.owned.back()->lock_asset({m.lock_ref, m.asset, m.amount, m.payer, m.payee, ring.terms.session_id, expiry});
        c.ptrs.push_back(c.owned.back().get());
    }
    return c;
}

} // namespace mpswap::fixture
