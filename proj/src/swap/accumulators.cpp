#include "mpswap/swap/accumulators.hpp"

#include "mpswap/error.hpp"

namespace mpswap::swap {

SwapAccumulators::SwapAccumulators(acc::RsaParams params, const SwapTerms& terms)
    : params_(std::move(params)), terms_(terms), mode_(terms.mode) {
    terms_.validate();
    acc::Multiset msgs;
    for (const auto& p : terms_.parties) keys_.insert(p.pk.encode());
    for (const auto& m : terms_.messages) msgs.insert(m.encode());
    keys_digest_ = acc::digest(params_, keys_);
    msgs_digest_ = acc::digest(params_, msgs);
    presig_digest_ = acc::empty_digest(params_);
}

schnorr::ChallengeBinding SwapAccumulators::binding() const {
    if (mode_ == SwapMode::kDirect) return schnorr::ChallengeBinding::direct();
    return schnorr::ChallengeBinding::accumulated(params_, keys_digest_, msgs_digest_);
}

acc::MembershipWitness SwapAccumulators::key_witness(const GroupElement& pk) const {
    return acc::prove_membership(params_, keys_, pk.encode());
}

acc::MembershipWitness SwapAccumulators::presig_witness(const schnorr::PreSignature& ps) const {
    return acc::prove_membership(params_, presigs_, ps.encode());
}

bool SwapAccumulators::has_presig(const schnorr::PreSignature& ps) const {
    return presigs_.contains(ps.encode());
}

void SwapAccumulators::register_presig(const schnorr::PreSignature& ps) {
    auto elem = ps.encode();
    if (presigs_.contains(elem)) return;
    auto pos = terms_.position_of(ps.party_id);
    if (!pos) throw Error(Errc::kBadPreSignature, "pre-signature from outside the session");
    const auto& pk = terms_.parties[*pos].pk;
    if (schnorr::compute_challenge(ps.R, ps.T, pk, binding(), terms_.messages[*pos].encode()) != ps.c) {
        throw Error(Errc::kBadPreSignature, "pre-signature challenge does not bind the party's message");
    }
    if (!schnorr::pre_verify(ps, pk)) throw Error(Errc::kBadPreSignature, "pre-signature does not verify");
    presigs_.insert(elem);
    presig_digest_ = acc::insert(params_, presig_digest_, elem);
    store_.push_back(ps);
}

} // namespace mpswap::swap
