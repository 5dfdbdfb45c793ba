#include "mpswap/sim/adversary.hpp"

#include <charconv>

#include "mpswap/crypto/bigint.hpp"
#include "mpswap/error.hpp"

namespace mpswap::sim {

namespace {

Scalar random_scalar(const Group& group, Drbg& rng) { return scalar_random(group, rng.bytes(32)); }

acc::MembershipWitness random_witness(const acc::RsaParams& params, Drbg& rng) {
    for (;;) {
        mpz_class v = mpz_from_bytes(rng.bytes(params.modulus_bytes()));
        v %= params.modulus;
        if (v == 0) continue;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), params.modulus.get_mpz_t());
        if (g == 1) return {acc::QrElement::make(params, v)};
    }
}

const schnorr::PreSignature* registered_presig_of(const swap::SwapAccumulators& hub, const std::string& party_id) {
    for (const auto& ps : hub.presig_store()) {
        if (ps.party_id == party_id) return &ps;
    }
    return nullptr;
}

GroupElement public_statement(const swap::SwapAccumulators& hub, const Group& group, Drbg& rng) {
    if (!hub.presig_store().empty()) return hub.presig_store().front().T;
    return group.mul_base(random_scalar(group, rng));
}

Attempt submit(chain::Chain& chain, const chain::ChainTx& tx, std::string actor, std::string label) {
    auto height = chain.height();
    auto result = chain.submit_tx(tx);
    return {std::move(actor), std::move(label), chain.id(), height, tx, result};
}

std::optional<std::size_t> parse_index(std::string_view s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

} // namespace

std::string Behavior::name() const {
    switch (kind) {
    case Kind::kHonest: return "honest";
    case Kind::kDropoutAfterFinalize: return "dropout-after-finalize";
    case Kind::kDropoutBeforeFinalize:
        return drop == DropPoint::kBeforePreSign ? "dropout-before-presign" : "dropout-after-presign";
    case Kind::kSkipper: return "skipper:" + std::to_string(target);
    case Kind::kImpersonator: return "impersonator:" + std::to_string(target);
    case Kind::kLeaker: return "leaker";
    case Kind::kColluder: return "colluder";
    }
    return "unknown";
}

std::optional<Behavior> Behavior::parse(std::string_view text) {
    if (text == "honest") return honest();
    if (text == "dropout-after-finalize") return dropout_after_finalize();
    if (text == "dropout-before-presign") return dropout_before_finalize(DropPoint::kBeforePreSign);
    if (text == "dropout-after-presign") return dropout_before_finalize(DropPoint::kAfterPreSign);
    if (text == "leaker") return leaker();
    if (text == "colluder") return colluder();
    auto colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto index = parse_index(text.substr(colon + 1));
    if (!index) return std::nullopt;
    auto head = text.substr(0, colon);
    if (head == "skipper") return skipper(*index);
    if (head == "impersonator") return impersonator(*index);
    return std::nullopt;
}

chain::ChainTx make_claim(const swap::SwapTerms& terms, const swap::SwapAccumulators& hub, std::size_t pos,
                          const schnorr::FullSignature& sig, const schnorr::PreSignature& presig) {
    chain::ChainTx tx{terms.session_id, terms.messages[pos], terms.parties[pos].pk, sig, presig, {}, {}};
    if (hub.mode() == swap::SwapMode::kAccumulated) {
        tx.pk_witness = hub.key_witness(tx.signer_pk);
        if (hub.has_presig(presig)) tx.presig_witness = hub.presig_witness(presig);
    }
    return tx;
}

schnorr::FullSignature forge_without_secret(const schnorr::KeyPair& key, const GroupElement& T,
                                            const schnorr::ChallengeBinding& binding, ByteView message,
                                            std::string party_id, Drbg& rng) {
    const auto& group = key.pk.group();
    auto r = random_scalar(group, rng);
    auto R = group.mul_base(r) - T;
    auto c = schnorr::compute_challenge(R, T, key.pk, binding, message);
    return {std::move(party_id), c, r + c * key.sk, R, T};
}

std::vector<Attempt> impersonation_attempt(const schnorr::KeyPair& eve, std::size_t victim,
                                           const swap::SwapTerms& terms, const swap::SwapAccumulators& hub,
                                           const ChainSet& chains, Drbg& rng) {
    const auto& group = terms.group();
    const auto binding = hub.binding();
    const auto T = public_statement(hub, group, rng);
    const auto& victim_party = terms.parties[victim];
    const auto msg = terms.messages[victim].encode();
    const auto* victim_ps = registered_presig_of(hub, victim_party.id);
    std::vector<Attempt> out;

    auto sig = forge_without_secret(eve, T, binding, msg, victim_party.id, rng);
    schnorr::PreSignature fake{sig.party_id, sig.c, random_scalar(group, rng), sig.R, T};
    chain::ChainTx tx{terms.session_id, terms.messages[victim], eve.pk, sig, victim_ps ? *victim_ps : fake, {}, {}};
    if (hub.mode() == swap::SwapMode::kAccumulated) {
        tx.pk_witness = hub.key_witness(victim_party.pk);
        if (victim_ps) tx.presig_witness = hub.presig_witness(*victim_ps);
    }
    out.push_back(submit(*chains[victim], tx, "eve", "borrowed-key-witness"));

    tx.pk_witness = random_witness(hub.params(), rng);
    out.push_back(submit(*chains[victim], tx, "eve", "forged-key-witness"));

    // Claiming under the victim's key without its secret key or t.
    if (victim_ps) {
        schnorr::FullSignature guess{victim_party.id, victim_ps->c, random_scalar(group, rng), victim_ps->R, T};
        out.push_back(submit(*chains[victim], make_claim(terms, hub, victim, guess, *victim_ps), "eve",
                             "victim-key-guess"));
    }

    for (const auto& e : chains[victim]->events()) {
        if (e.kind != chain::EventKind::kClaim || !e.tx || e.tx->session_id != terms.session_id) continue;
        auto other = (victim + 1) % terms.size();
        out.push_back(submit(*chains[other], *e.tx, "eve", "replay-other-chain"));
        out.push_back(submit(*chains[victim], *e.tx, "eve", "replay-same-chain"));
        break;
    }
    return out;
}

std::vector<Attempt> leak_attempt(const swap::PreSigBundle& leaked, const swap::SwapTerms& terms,
                                  const swap::SwapAccumulators& hub, const ChainSet& chains, Drbg& rng,
                                  const std::optional<std::pair<std::size_t, schnorr::KeyPair>>& insider) {
    const auto& group = terms.group();
    const auto binding = hub.binding();
    const auto outsider = schnorr::KeyPair::derive(group, rng.bytes(32));
    std::vector<Attempt> out;

    for (const auto& ps : leaked.entries) {
        auto pos = terms.position_of(ps.party_id);
        if (!pos) continue;
        auto& chain = *chains[*pos];

        schnorr::FullSignature bare{ps.party_id, ps.c, ps.s_pre, ps.R, ps.T};
        out.push_back(submit(chain, make_claim(terms, hub, *pos, bare, ps), "outsider", "no-offset"));

        auto guessed = bare;
        guessed.s = ps.s_pre + random_scalar(group, rng);
        out.push_back(submit(chain, make_claim(terms, hub, *pos, guessed, ps), "outsider", "guessed-offset"));

        auto redirected = terms.messages[*pos];
        redirected.payee = outsider.pk;
        auto sig = forge_without_secret(outsider, leaked.T, binding, redirected.encode(), ps.party_id, rng);
        auto tx = make_claim(terms, hub, *pos, sig, ps);
        tx.message = redirected;
        tx.signer_pk = outsider.pk;
        out.push_back(submit(chain, tx, "outsider", "redirect-to-outsider"));

        if (insider) {
            const auto& [k, key] = *insider;
            const auto& kid = terms.parties[k].id;
            const auto* own = registered_presig_of(hub, kid);
            redirected.payee = key.pk;
            auto isig = forge_without_secret(key, leaked.T, binding, redirected.encode(), kid, rng);
            schnorr::PreSignature fake{kid, isig.c, random_scalar(group, rng), isig.R, leaked.T};
            auto itx = make_claim(terms, hub, k, isig, own ? *own : fake);
            itx.message = redirected;
            out.push_back(submit(chain, itx, kid, "redirect-to-insider"));
        }
    }

    if (insider) {
        const auto& [k, key] = *insider;
        const auto& kid = terms.parties[k].id;
        const auto* own = registered_presig_of(hub, kid);
        auto sig = forge_without_secret(key, leaked.T, binding, terms.messages[k].encode(), kid, rng);
        schnorr::PreSignature fake{kid, sig.c, random_scalar(group, rng), sig.R, leaked.T};
        out.push_back(submit(*chains[k], make_claim(terms, hub, k, sig, own ? *own : fake), kid, "insider-own-early"));
    }
    return out;
}

std::vector<Attempt> collusion_attempt(const std::vector<std::pair<std::size_t, schnorr::KeyPair>>& pool,
                                       std::size_t victim, const swap::SwapTerms& terms,
                                       const swap::SwapAccumulators& hub, const ChainSet& chains,
                                       const Scalar& t, Drbg& rng) {
    const auto& group = terms.group();
    const auto binding = hub.binding();
    const auto T = group.mul_base(t);
    auto& chain = *chains[victim];
    std::vector<Attempt> out;

    for (const auto& [k, key] : pool) {
        const auto& kid = terms.parties[k].id;
        const auto* own = registered_presig_of(hub, kid);

        // A correctly adapted signature under the colluder's key over a
        // message that pays the colluder instead of the victim.
        auto diverted = terms.messages[victim];
        diverted.payee = key.pk;
        auto r = random_scalar(group, rng);
        auto R = group.mul_base(r);
        auto c = schnorr::compute_challenge(R, T, key.pk, binding, diverted.encode());
        schnorr::PreSignature ps{kid, c, r + c * key.sk, R, T};
        auto fs = schnorr::complete(ps, t);

        auto tx = make_claim(terms, hub, k, fs, ps);
        tx.message = diverted;
        out.push_back(submit(chain, tx, kid, "divert-unregistered-presig"));

        if (own) {
            auto with_own = make_claim(terms, hub, k, fs, *own);
            with_own.message = diverted;
            out.push_back(submit(chain, with_own, kid, "divert-foreign-presig"));
            out.push_back(submit(chain, make_claim(terms, hub, k, schnorr::complete(*own, t), *own), kid,
                                 "own-claim-on-victim-chain"));
        }
    }
    return out;
}

} // namespace mpswap::sim
