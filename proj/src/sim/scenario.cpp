#include "mpswap/sim/scenario.hpp"

#include <memory>

#include "mpswap/crypto/drbg.hpp"
#include "mpswap/crypto/hash.hpp"

namespace mpswap::sim {

namespace {

constexpr std::string_view kHonestClaim = "claim";

bool claims_when_possible(const Behavior& b) {
    return b.kind != Behavior::Kind::kDropoutAfterFinalize && b.kind != Behavior::Kind::kDropoutBeforeFinalize;
}

bool drops_at(const Behavior& b, DropPoint at) {
    return b.kind == Behavior::Kind::kDropoutBeforeFinalize && b.drop == at;
}

std::string party_id(std::size_t pos) { return "P" + std::to_string(pos + 1); }

} // namespace

std::string_view verdict_name(Verdict verdict) {
    switch (verdict) {
    case Verdict::kAllCompleted: return "all-completed";
    case Verdict::kNoneCompleted: return "none-completed";
    case Verdict::kViolation: return "violation";
    }
    return "unknown";
}

std::optional<Verdict> parse_verdict(std::string_view name) {
    for (auto v : {Verdict::kAllCompleted, Verdict::kNoneCompleted, Verdict::kViolation}) {
        if (verdict_name(v) == name) return v;
    }
    return std::nullopt;
}

void ScenarioSpec::validate() const {
    if (group == nullptr) throw Error(Errc::kConfig, "no group profile");
    if (parties < 2) throw Error(Errc::kConfig, "a scenario needs at least two parties");
    if (mode == swap::SwapMode::kDirect && parties != 2) throw Error(Errc::kConfig, "direct mode is two-party only");
    if (seed.empty()) throw Error(Errc::kConfig, "empty seed");
    if (base_expiry < 4) throw Error(Errc::kConfig, "base_expiry must be at least 4");
    if (claim_window < 2) throw Error(Errc::kConfig, "claim_window must be at least 2");
    if (!behaviors.empty() && behaviors.size() != parties) {
        throw Error(Errc::kConfig, "one behavior per party required");
    }
    for (std::size_t i = 0; i < behaviors.size(); ++i) {
        const auto& b = behaviors[i];
        if (b.kind == Behavior::Kind::kSkipper && (b.target <= i || b.target >= parties)) {
            throw Error(Errc::kConfig, "skipper target must be a later ring position");
        }
        if (b.kind == Behavior::Kind::kImpersonator && (b.target == i || b.target >= parties)) {
            throw Error(Errc::kConfig, "impersonator victim must be another party");
        }
    }
}

std::vector<Attempt> ScenarioOutcome::adversarial_attempts() const {
    std::vector<Attempt> out;
    for (const auto& s : submissions) {
        if (s.attempt.label != kHonestClaim) out.push_back(s.attempt);
    }
    return out;
}

std::vector<std::string> ScenarioOutcome::event_log() const {
    std::vector<std::string> out;
    for (const auto& e : events) out.push_back(e.format());
    return out;
}

Verdict compute_verdict(const std::vector<bool>& honest, const std::vector<LockFate>& locks) {
    const auto n = locks.size();
    bool all_paid = true;
    bool all_refunded = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (locks[i].diverted) return Verdict::kViolation;
        if (!locks[i].claimed && !locks[i].refunded) return Verdict::kViolation;
        all_refunded = all_refunded && locks[i].refunded;
        if (!honest[i]) continue;
        const auto& outgoing = locks[(i + 1) % n];
        if (outgoing.claimed && !locks[i].claimed) return Verdict::kViolation;
        all_paid = all_paid && locks[i].claimed;
    }
    if (all_paid) return Verdict::kAllCompleted;
    if (all_refunded) return Verdict::kNoneCompleted;
    return Verdict::kViolation;
}

ScenarioOutcome run_scenario(const ScenarioSpec& spec) {
    spec.validate();
    const auto& group = *spec.group;
    const auto n = spec.parties;
    Drbg rng(derive_seed(spec.seed, "scenario/schedule"));

    std::vector<schnorr::KeyPair> keys;
    std::vector<swap::PartyInfo> infos;
    std::vector<swap::Asset> owed;
    for (std::size_t i = 0; i < n; ++i) {
        keys.push_back(schnorr::KeyPair::derive(group, derive_seed(spec.seed, "scenario/key/" + std::to_string(i))));
        infos.push_back({party_id(i), keys.back().pk, "chain-" + std::to_string(i + 1)});
        owed.push_back({"asset-" + std::to_string(i + 1), 100 + 10 * i});
    }
    auto digest = sha256(spec.seed);
    std::string session_id = "swap-" + to_hex(ByteView(digest.data(), 8));

    ScenarioOutcome out;
    out.terms = swap::make_ring_terms(session_id, spec.mode, infos, owed);
    const auto& terms = out.terms;
    auto hub = std::make_shared<swap::SwapAccumulators>(spec.acc_params, terms);
    out.acc_keys = hub->keys_digest();
    out.acc_msgs = hub->msgs_digest();

    std::vector<chain::Chain> chains;
    chains.reserve(n);
    ChainSet chain_ptrs;
    for (std::size_t i = 0; i < n; ++i) {
        chains.emplace_back(infos[i].chain_id);
        chain_ptrs.push_back(&chains.back());
        chains[i].attach_session(session_id, hub);
        const auto& m = terms.messages[i];
        auto expiry = i == 0 ? spec.base_expiry : spec.base_expiry + spec.claim_window;
        chains[i].lock_asset({m.lock_ref, m.asset, m.amount, m.payer, m.payee, session_id, expiry});
    }

    std::vector<swap::SwapSession> sessions;
    for (std::size_t i = 0; i < n; ++i) {
        sessions.push_back(
            swap::session_init(terms, hub, keys[i], derive_seed(spec.seed, "scenario/session/" + std::to_string(i))));
    }
    out.T = *sessions[0].statement();

    auto record = [&](std::vector<Attempt> attempts) {
        for (auto& a : attempts) out.submissions.push_back({std::move(a), hub->presig_digest()});
    };
    auto claim = [&](std::size_t i, const schnorr::FullSignature& fs) {
        auto tx = make_claim(terms, *hub, i, fs, *sessions[i].own_presig());
        auto height = chains[i].height();
        auto result = chains[i].submit_tx(tx);
        out.submissions.push_back({{infos[i].id, std::string(kHonestClaim), infos[i].chain_id, height, tx, result},
                                   hub->presig_digest()});
    };

    // Ring propagation, off-chain.
    std::optional<schnorr::FullSignature> initiator_sig;
    if (!drops_at(spec.behavior(0), DropPoint::kBeforePreSign)) {
        auto bundle = swap::initiator_start(sessions[0]);
        std::size_t holder = 0;
        while (!drops_at(spec.behavior(holder), DropPoint::kAfterPreSign)) {
            const auto b = spec.behavior(holder);
            if (b.kind == Behavior::Kind::kLeaker) {
                record(leak_attempt(bundle, terms, *hub, chain_ptrs, rng, std::make_pair(holder, keys[holder])));
            }
            std::size_t to = (holder + 1) % n;
            if (b.kind == Behavior::Kind::kSkipper) to = (b.target + 1) % n;
            out.hops.push_back({holder, to, bundle});
            if (to == 0) {
                try {
                    initiator_sig = swap::finalize(sessions[0], bundle);
                } catch (const Error& e) {
                    out.ring_errors.push_back({0, e.code(), e.what()});
                    swap::abort_session(sessions[0]);
                }
                break;
            }
            if (drops_at(spec.behavior(to), DropPoint::kBeforePreSign)) break;
            try {
                bundle = swap::participant_step(sessions[to], bundle);
            } catch (const Error& e) {
                out.ring_errors.push_back({to, e.code(), e.what()});
                swap::abort_session(sessions[to]);
                break;
            }
            holder = to;
        }
    }
    out.finalized = initiator_sig.has_value();

    // On-chain phase: all chains advance in lockstep.
    const auto last_height = spec.base_expiry + spec.claim_window + 1;
    const auto finalize_height = 1 + rng.uniform(spec.base_expiry - 2);
    std::vector<std::uint64_t> delay(n);
    for (auto& d : delay) d = rng.uniform(spec.claim_window / 2);
    std::vector<std::optional<std::uint64_t>> seen(n);
    std::vector<bool> done(n, false);
    std::vector<std::size_t> order(n);
    bool collusion_tried = false;

    auto find_claim = [&]() -> const chain::ChainTx* {
        for (const auto& c : chains) {
            for (const auto& e : c.events()) {
                if (e.kind == chain::EventKind::kClaim && e.tx && e.tx->session_id == session_id) return &*e.tx;
            }
        }
        return nullptr;
    };

    // What a non-honest party tries once it can complete its own signature.
    auto adversarial_moves = [&](std::size_t i, const schnorr::FullSignature& fs) {
        const auto b = spec.behavior(i);
        const auto& t = *sessions[i].secret();
        if (b.kind == Behavior::Kind::kImpersonator) {
            auto eve = schnorr::KeyPair::derive(group, rng.bytes(32));
            record(impersonation_attempt(eve, b.target, terms, *hub, chain_ptrs, rng));
            auto own = make_claim(terms, *hub, i, fs, *sessions[i].own_presig());
            auto height = chains[b.target].height();
            auto result = chains[b.target].submit_tx(own);
            record({{infos[i].id, "own-claim-on-victim-lock", infos[b.target].chain_id, height, own, result}});
        }
        if (b.kind == Behavior::Kind::kColluder && !collusion_tried) {
            collusion_tried = true;
            std::vector<std::pair<std::size_t, schnorr::KeyPair>> pool;
            for (std::size_t k = 0; k < n; ++k) {
                if (spec.behavior(k).kind == Behavior::Kind::kColluder) pool.emplace_back(k, keys[k]);
            }
            for (std::size_t v = 0; v < n; ++v) {
                if (spec.behavior(v).is_honest()) record(collusion_attempt(pool, v, terms, *hub, chain_ptrs, t, rng));
            }
        }
    };

    for (std::uint64_t h = 1; h <= last_height; ++h) {
        for (auto& c : chains) c.advance_height(1);

        if (h == finalize_height && initiator_sig && claims_when_possible(spec.behavior(0))) {
            swap::observe_and_complete(sessions[0], *initiator_sig, *sessions[0].own_presig());
            adversarial_moves(0, *initiator_sig);
            claim(0, *initiator_sig);
            done[0] = true;
        }

        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform(i)]);

        const auto* observed = find_claim();
        for (auto i : order) {
            const auto b = spec.behavior(i);
            if (i == 0 || done[i] || !claims_when_possible(b) || observed == nullptr) continue;
            if (!seen[i]) seen[i] = h;
            if (h < *seen[i] + delay[i]) continue;
            done[i] = true;

            const schnorr::PreSignature* stored = nullptr;
            for (const auto& ps : hub->presig_store()) {
                if (ps == observed->presig) stored = &ps;
            }
            if (stored == nullptr) continue;
            schnorr::FullSignature fs;
            try {
                fs = swap::observe_and_complete(sessions[i], observed->sig, *stored);
            } catch (const Error& e) {
                out.ring_errors.push_back({i, e.code(), e.what()});
                continue;
            }
            adversarial_moves(i, fs);
            claim(i, fs);
        }
    }

    std::vector<bool> honest(n);
    std::vector<LockFate> fates(n);
    for (std::size_t i = 0; i < n; ++i) {
        honest[i] = spec.behavior(i).is_honest();
        auto state = chains[i].lock_state(terms.messages[i].lock_ref);
        fates[i].claimed = state == chain::LockState::kClaimed;
        fates[i].refunded = state == chain::LockState::kRefunded;
        for (const auto& e : chains[i].events()) {
            if (e.kind == chain::EventKind::kClaim && e.tx && e.tx->signer_pk != terms.messages[i].payee) {
                fates[i].diverted = true;
            }
        }
    }
    out.verdict = compute_verdict(honest, fates);

    for (std::size_t i = 0; i < n; ++i) {
        PartyReport r{infos[i].id, spec.behavior(i), sessions[i].phase(), fates[i].claimed,
                      fates[(i + 1) % n].claimed, {}, std::nullopt};
        const auto& in = terms.messages[i];
        const auto& outgoing = terms.messages[(i + 1) % n];
        if (r.claimed) r.ledger[in.asset] += static_cast<std::int64_t>(in.amount);
        if (r.outgoing_claimed) r.ledger[outgoing.asset] -= static_cast<std::int64_t>(outgoing.amount);
        if (sessions[i].phase() == swap::Phase::kCompleted) r.extracted = sessions[i].secret();
        out.parties.push_back(std::move(r));
        out.accepted_per_chain.push_back(chains[i].accepted_count());
    }
    out.registered = hub->presig_store();
    for (const auto& c : chains) {
        out.events.insert(out.events.end(), c.events().begin(), c.events().end());
    }
    return out;
}

} // namespace mpswap::sim
