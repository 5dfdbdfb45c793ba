#include "mpswap/swap/terms.hpp"

#include <set>

#include "mpswap/error.hpp"

namespace mpswap::swap {

Bytes SwapMessage::encode() const {
    ByteWriter w;
    w.str(chain_id).str(asset).u64(amount).raw(payer.encode()).raw(payee.encode()).str(lock_ref);
    return std::move(w).take();
}

SwapMessage SwapMessage::decode(const Group& group, ByteView data) {
    ByteReader r(data);
    SwapMessage m;
    m.chain_id = r.str();
    m.asset = r.str();
    m.amount = r.u64();
    m.payer = group.decode_element(r.raw(group.element_bytes()));
    m.payee = group.decode_element(r.raw(group.element_bytes()));
    m.lock_ref = r.str();
    r.expect_done();
    return m;
}

std::string_view mode_name(SwapMode mode) {
    return mode == SwapMode::kDirect ? "direct" : "accumulated";
}

std::optional<SwapMode> parse_mode(std::string_view name) {
    if (name == "direct") return SwapMode::kDirect;
    if (name == "accumulated") return SwapMode::kAccumulated;
    return std::nullopt;
}

std::optional<std::size_t> SwapTerms::position_of(std::string_view party_id) const {
    for (std::size_t i = 0; i < parties.size(); ++i) {
        if (parties[i].id == party_id) return i;
    }
    return std::nullopt;
}

void SwapTerms::validate() const {
    if (parties.size() < 2) throw Error(Errc::kEmptySession, "a swap needs at least two parties");
    std::set<std::string> ids;
    std::set<Bytes> pks;
    std::set<std::string> chains;
    for (const auto& p : parties) {
        if (p.id.empty()) throw Error(Errc::kInvalidTerms, "empty party id");
        if (p.pk.is_identity()) throw Error(Errc::kInvalidTerms, "party key is the identity");
        if (&p.pk.group() != &group()) throw Error(Errc::kInvalidTerms, "parties use different groups");
        if (!ids.insert(p.id).second) throw Error(Errc::kDuplicateParty, "duplicate party id " + p.id);
        if (!pks.insert(p.pk.encode()).second) throw Error(Errc::kDuplicateParty, "duplicate key for " + p.id);
        if (!chains.insert(p.chain_id).second) throw Error(Errc::kInvalidTerms, "two parties claim on " + p.chain_id);
    }
    if (mode == SwapMode::kDirect && parties.size() != 2) {
        throw Error(Errc::kInvalidTerms, "direct mode is two-party only");
    }
    if (messages.size() != parties.size()) throw Error(Errc::kInvalidTerms, "one message per party required");
    for (std::size_t i = 0; i < parties.size(); ++i) {
        const auto& m = messages[i];
        if (m.chain_id != parties[i].chain_id) throw Error(Errc::kInvalidTerms, "message chain mismatch");
        if (m.payee != parties[i].pk) throw Error(Errc::kInvalidTerms, "payee is not the claiming party");
        if (m.payer != parties[payer_of(i)].pk) throw Error(Errc::kInvalidTerms, "payer is not the ring predecessor");
    }
}

SwapTerms make_ring_terms(std::string session_id, SwapMode mode, std::vector<PartyInfo> parties,
                          const std::vector<Asset>& owed) {
    if (owed.size() != parties.size()) throw Error(Errc::kInvalidTerms, "one owed asset per party required");
    SwapTerms terms{std::move(session_id), mode, std::move(parties), {}};
    const auto n = terms.parties.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = terms.parties[i];
        terms.messages.push_back({p.chain_id, owed[i].id, owed[i].amount, terms.parties[(i + n - 1) % n].pk,
                                  p.pk, terms.session_id + "/" + p.chain_id});
    }
    terms.validate();
    return terms;
}

} // namespace mpswap::swap
