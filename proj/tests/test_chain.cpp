#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mpswap/crypto/hash.hpp"
#include "mpswap/error.hpp"
#include "mpswap/sim/adversary.hpp"

namespace mpswap::chain {
namespace {

using fixture::Chains;
using fixture::Ring;

const Group& prod() { return Group::secp256k1(); }

// A ring run through finalization plus the claims every party would submit.
struct Completed {
    Ring ring;
    Chains chains;
    std::vector<ChainTx> claims;

    explicit Completed(std::size_t n, std::string_view seed, std::uint64_t expiry = 10,
                       swap::SwapMode mode = swap::SwapMode::kAccumulated)
        : ring(Ring::make(n, prod(), fixture::toy(), seed, mode)), chains(Chains::make(ring, expiry)) {
        auto complete = ring.run_ring()[0];
        std::vector<schnorr::FullSignature> fulls{swap::finalize(ring.sessions[0], complete)};
        for (std::size_t i = 1; i < n; ++i) {
            fulls.push_back(swap::observe_and_complete(ring.sessions[i], fulls[0], *ring.sessions[0].own_presig()));
        }
        for (std::size_t i = 0; i < n; ++i) {
            claims.push_back(sim::make_claim(ring.terms, *ring.hub, i, fulls[i], *ring.sessions[i].own_presig()));
        }
    }
};

TEST(Lock, FreshDoubleAndVisible) {
    auto ring = Ring::make(2, prod(), fixture::toy(), "lock");
    Chain c("chain-1");
    const auto& m = ring.terms.messages[0];
    LockRecord rec{m.lock_ref, m.asset, m.amount, m.payer, m.payee, ring.terms.session_id, 5};
    EXPECT_EQ(c.lock_asset(rec), m.lock_ref);
    EXPECT_EQ(c.lock_state(m.lock_ref), LockState::kLive);
    try {
        c.lock_asset(rec);
        FAIL() << "expected AlreadyLocked";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kAlreadyLocked);
    }
    auto same_asset = rec;
    same_asset.lock_id = "other";
    EXPECT_THROW(c.lock_asset(same_asset), Error);
    auto events = c.observe(0);
    ASSERT_EQ(events.size(), 1u);
    EXPECT_EQ(events[0].kind, EventKind::kLock);
    EXPECT_EQ(events[0].payload, rec.encode());
    EXPECT_TRUE(c.observe(1).empty());
    EXPECT_EQ(events[0].format(), "chain-1 0 lock " + m.lock_ref + " " + to_hex(sha256(rec.encode())));
}

TEST(VerifyTx, HonestClaimsAcceptedOncePerChain) {
    Completed run(3, "honest");
    for (std::size_t i = 0; i < 3; ++i) {
        auto& c = run.chains.at(i);
        EXPECT_FALSE(c.verify_tx(run.claims[i]).has_value());
        auto r = c.submit_tx(run.claims[i]);
        EXPECT_TRUE(r.accepted);
        EXPECT_EQ(c.submit_tx(run.claims[i]).reason, RejectReason::kLockSpent);
        EXPECT_EQ(c.accepted_count(), 1u);
        EXPECT_EQ(c.lock_state(run.ring.terms.messages[i].lock_ref), LockState::kClaimed);
    }
}

TEST(VerifyTx, ClaimEventAppearsAtNextHeightAndFeedsCompletion) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "observe-chain");
    auto chains = Chains::make(ring, 10);
    auto complete = ring.run_ring()[0];
    auto s1 = swap::finalize(ring.sessions[0], complete);
    auto tx = sim::make_claim(ring.terms, *ring.hub, 0, s1, *ring.sessions[0].own_presig());
    auto& c = chains.at(0);
    c.advance_height(2);
    ASSERT_TRUE(c.submit_tx(tx).accepted);
    EXPECT_TRUE(c.observe(3).empty());
    c.advance_height();
    auto events = c.observe(3);
    ASSERT_EQ(events.size(), 1u);
    EXPECT_EQ(events[0].height, 3u);
    EXPECT_EQ(events[0].kind, EventKind::kClaim);
    ASSERT_TRUE(events[0].tx.has_value());
    auto bob = swap::observe_and_complete(ring.sessions[1], events[0].tx->sig, events[0].tx->presig);
    auto bob_tx = sim::make_claim(ring.terms, *ring.hub, 1, bob, *ring.sessions[1].own_presig());
    EXPECT_TRUE(chains.at(1).submit_tx(bob_tx).accepted);
}

TEST(VerifyTx, ClauseByClauseRejections) {
    Completed run(3, "clauses");
    auto& c = run.chains.at(1);
    const auto& honest = run.claims[1];
    auto eve = schnorr::KeyPair::derive(prod(), as_bytes("eve"));

    auto unknown = honest;
    unknown.session_id = "nope";
    EXPECT_EQ(c.verify_tx(unknown), RejectReason::kUnknownSession);

    auto eve_pk = honest;
    eve_pk.signer_pk = eve.pk;
    EXPECT_EQ(c.verify_tx(eve_pk), RejectReason::kPkNotInAccumulator);

    auto no_presig_witness = honest;
    no_presig_witness.presig_witness = run.claims[0].presig_witness;
    EXPECT_EQ(c.verify_tx(no_presig_witness), RejectReason::kPreSigNotInAccumulator);

    auto bad_sig = honest;
    bad_sig.sig.s = bad_sig.sig.s + prod().scalar(1);
    EXPECT_EQ(c.verify_tx(bad_sig), RejectReason::kBadSignature);

    auto wrong_chain = run.claims[0];
    EXPECT_EQ(c.verify_tx(wrong_chain), RejectReason::kWrongChain);
}

TEST(VerifyTx, ChallengeMismatchWhenMessageDiffers) {
    Completed run(2, "challenge");
    auto tx = run.claims[1];
    tx.message.amount += 1;
    EXPECT_EQ(run.chains.at(1).verify_tx(tx), RejectReason::kChallengeMismatch);
}

TEST(VerifyTx, SignatureNotLinkedToAccumulatedPreSignature) {
    Completed run(3, "unlinked");
    Drbg rng("unlinked");
    const auto& honest = run.claims[1];
    // A valid-looking signature under P2's key built for the right challenge
    // without t: R' − T trick. It cannot match the accumulated s_pre.
    auto forged = sim::forge_without_secret(run.ring.keys[1], honest.sig.T, run.ring.hub->binding(),
                                            run.ring.terms.messages[1].encode(), "P2", rng);
    auto tx = honest;
    tx.sig = forged;
    auto reason = run.chains.at(1).verify_tx(tx);
    ASSERT_TRUE(reason.has_value());
    EXPECT_EQ(*reason, RejectReason::kPreSigMismatch);
}

TEST(VerifyTx, NeverAccumulatedPreSignature) {
    Completed run(3, "never");
    auto tx = run.claims[1];
    auto n = schnorr::NoncePair::derive(prod(), as_bytes("fresh"));
    auto c = schnorr::compute_challenge(n.R, tx.sig.T, run.ring.keys[1].pk, run.ring.hub->binding(),
                                        run.ring.terms.messages[1].encode());
    tx.presig = {"P2", c, schnorr::pre_sign(run.ring.keys[1], n, c), n.R, tx.sig.T};
    tx.sig = schnorr::complete(tx.presig, *run.ring.sessions[0].secret());
    EXPECT_EQ(run.chains.at(1).verify_tx(tx), RejectReason::kPreSigNotInAccumulator);
}

TEST(Expiry, RefundAfterExpiryAndClaimBeforeIt) {
    Completed late(2, "late", 3);
    auto& c = late.chains.at(1);
    c.advance_height(3);
    EXPECT_EQ(c.lock_state(late.ring.terms.messages[1].lock_ref), LockState::kRefunded);
    EXPECT_EQ(c.submit_tx(late.claims[1]).reason, RejectReason::kLockExpired);
    auto events = c.events();
    ASSERT_EQ(events.back().kind, EventKind::kRefund);
    EXPECT_EQ(events.back().height, 3u);

    Completed early(2, "early", 3);
    auto& e = early.chains.at(1);
    e.advance_height(2);
    ASSERT_TRUE(e.submit_tx(early.claims[1]).accepted);
    e.advance_height(5);
    EXPECT_EQ(e.lock_state(early.ring.terms.messages[1].lock_ref), LockState::kClaimed);
    for (const auto& ev : e.events()) EXPECT_NE(ev.kind, EventKind::kRefund);

    Completed boundary(2, "boundary", 3);
    boundary.chains.at(0).advance_height(2);
    EXPECT_FALSE(boundary.chains.at(0).verify_tx(boundary.claims[0]).has_value());
}

TEST(Height, MonotoneAndEventsOrdered) {
    Completed run(2, "monotone", 4);
    auto& c = run.chains.at(0);
    std::uint64_t last = c.height();
    for (int i = 0; i < 6; ++i) {
        auto h = c.advance_height();
        EXPECT_GT(h, last);
        last = h;
    }
    std::uint64_t prev = 0;
    for (const auto& e : c.events()) {
        EXPECT_GE(e.height, prev);
        prev = e.height;
    }
}

TEST(DirectMode, ChainSkipsMembershipClauses) {
    Completed run(2, "direct-chain", 10, swap::SwapMode::kDirect);
    auto tx = run.claims[1];
    tx.pk_witness.reset();
    tx.presig_witness.reset();
    EXPECT_FALSE(run.chains.at(1).verify_tx(tx).has_value());
    auto eve = schnorr::KeyPair::derive(prod(), as_bytes("eve"));
    tx.signer_pk = eve.pk;
    EXPECT_EQ(run.chains.at(1).verify_tx(tx), RejectReason::kChallengeMismatch);
}

TEST(ChainTx, EncodeDecodeRoundTrip) {
    Completed run(3, "encode");
    const auto& params = fixture::toy();
    auto bytes = run.claims[2].encode(params);
    auto back = ChainTx::decode(prod(), params, bytes);
    EXPECT_EQ(back.encode(params), bytes);
    EXPECT_EQ(back.sig, run.claims[2].sig);
    bytes.push_back(0);
    EXPECT_THROW(ChainTx::decode(prod(), params, bytes), Error);
    for (int i = 0; i <= static_cast<int>(RejectReason::kBeneficiaryMismatch); ++i) {
        auto r = static_cast<RejectReason>(i);
        EXPECT_EQ(parse_reason(reason_name(r)), r);
    }
}

TEST(EventLog, IdenticalRunsGiveIdenticalLogs) {
    auto log_of = [](std::string_view seed) {
        Completed run(3, seed);
        std::vector<std::string> all;
        for (std::size_t i = 0; i < 3; ++i) {
            run.chains.at(i).submit_tx(run.claims[i]);
            run.chains.at(i).advance_height(12);
            for (auto& line : run.chains.at(i).event_log()) all.push_back(line);
        }
        return all;
    };
    EXPECT_EQ(log_of("same"), log_of("same"));
    EXPECT_NE(log_of("same"), log_of("different"));
}

} // namespace
} // namespace mpswap::chain
