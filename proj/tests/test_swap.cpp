#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mpswap/error.hpp"
#include "oracles.hpp"

namespace mpswap::swap {
namespace {

using fixture::Ring;

template <class F>
Errc error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return Errc::kInvalidArgument;
}

const Group& prod() { return Group::secp256k1(); }

TEST(Terms, ValidationErrors) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "terms");
    auto dup_pk = ring.terms;
    dup_pk.parties[2].pk = dup_pk.parties[1].pk;
    EXPECT_EQ(error_code([&] { dup_pk.validate(); }), Errc::kDuplicateParty);
    auto dup_id = ring.terms;
    dup_id.parties[2].id = "P1";
    EXPECT_EQ(error_code([&] { dup_id.validate(); }), Errc::kDuplicateParty);
    auto one = ring.terms;
    one.parties.resize(1);
    one.messages.resize(1);
    EXPECT_EQ(error_code([&] { one.validate(); }), Errc::kEmptySession);
    auto wrong_payee = ring.terms;
    wrong_payee.messages[0].payee = ring.keys[1].pk;
    EXPECT_EQ(error_code([&] { wrong_payee.validate(); }), Errc::kInvalidTerms);
    auto direct3 = ring.terms;
    direct3.mode = SwapMode::kDirect;
    EXPECT_EQ(error_code([&] { direct3.validate(); }), Errc::kInvalidTerms);
    EXPECT_EQ(SwapMessage::decode(prod(), ring.terms.messages[1].encode()), ring.terms.messages[1]);
    EXPECT_EQ(ring.terms.payer_of(0), 2u);
    EXPECT_EQ(parse_mode(mode_name(SwapMode::kDirect)), SwapMode::kDirect);
}

TEST(SessionInit, TwoPartyContext) {
    auto ring = Ring::make(2, prod(), fixture::toy(), "init2");
    auto ctx = ring.sessions[0].context();
    ASSERT_TRUE(ctx.T.has_value());
    ASSERT_TRUE(ring.sessions[0].secret().has_value());
    EXPECT_EQ(prod().mul_base(*ring.sessions[0].secret()), *ctx.T);
    EXPECT_FALSE(ring.sessions[1].context().T.has_value());
    EXPECT_EQ(ring.sessions[0].phase(), Phase::kInit);
    EXPECT_EQ(ctx.presig_acc, acc::empty_digest(fixture::toy()));
}

TEST(SessionInit, FivePartyAccumulatorsMatchRecompute) {
    auto ring = Ring::make(5, prod(), fixture::toy(), "init5");
    acc::Multiset keys, msgs;
    for (std::size_t i = 0; i < 5; ++i) {
        keys.insert(ring.keys[i].pk.encode());
        msgs.insert(ring.terms.messages[i].encode());
    }
    auto ctx = ring.sessions[3].context();
    EXPECT_EQ(ctx.acc_keys.value.value(), oracle::recompute_digest(fixture::toy(), keys));
    EXPECT_EQ(ctx.acc_msgs.value.value(), oracle::recompute_digest(fixture::toy(), msgs));
}

TEST(SessionInit, RejectsOutsiderAndBadTerms) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "outsider");
    auto eve = schnorr::KeyPair::derive(prod(), as_bytes("eve"));
    EXPECT_EQ(error_code([&] { session_init(ring.terms, ring.hub, eve, as_bytes("s")); }), Errc::kInvalidArgument);
    auto dup = ring.terms;
    dup.parties[1].pk = dup.parties[0].pk;
    EXPECT_EQ(error_code([&] { session_init(dup, ring.hub, ring.keys[0], as_bytes("s")); }), Errc::kDuplicateParty);
}

TEST(InitiatorStart, BundleVerifiesAndRecomputes) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "start");
    auto bundle = initiator_start(ring.sessions[0]);
    ASSERT_EQ(bundle.entries.size(), 1u);
    const auto& ps = bundle.entries[0];
    EXPECT_TRUE(schnorr::pre_verify(ps, ring.keys[0].pk));
    EXPECT_EQ(ps.c, schnorr::compute_challenge(ps.R, bundle.T, ring.keys[0].pk, ring.hub->binding(),
                                               ring.terms.messages[0].encode()));
    EXPECT_TRUE(ring.hub->has_presig(ps));
    EXPECT_EQ(ring.sessions[0].phase(), Phase::kCollecting);
    EXPECT_EQ(ring.sessions[0].collected_count(), 1u);
    EXPECT_EQ(error_code([&] { initiator_start(ring.sessions[0]); }), Errc::kWrongPhase);
    EXPECT_EQ(error_code([&] { initiator_start(ring.sessions[1]); }), Errc::kNotInitiator);
    EXPECT_EQ(PreSigBundle::decode(prod(), bundle.encode()), bundle);
}

TEST(ParticipantStep, ThreePartyTrace) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "trace3");
    auto alice = initiator_start(ring.sessions[0]);
    auto bob = participant_step(ring.sessions[1], alice);
    ASSERT_EQ(bob.entries.size(), 2u);
    EXPECT_EQ(bob.entries[0], alice.entries[0]);
    EXPECT_EQ(bob.entries[1].party_id, "P2");
    EXPECT_EQ(ring.sessions[1].collected_count(), 2u);
    auto carol = participant_step(ring.sessions[2], bob);
    EXPECT_EQ(carol.entries.size(), 3u);
    EXPECT_EQ(ring.hub->presig_store().size(), 3u);
    EXPECT_EQ(error_code([&] { participant_step(ring.sessions[2], bob); }), Errc::kWrongPhase);
}

TEST(ParticipantStep, SkippedPredecessorIsRejected) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "skip");
    auto alice = initiator_start(ring.sessions[0]);
    EXPECT_EQ(error_code([&] { participant_step(ring.sessions[2], alice); }), Errc::kMissingPredecessor);
    EXPECT_EQ(ring.sessions[2].phase(), Phase::kInit);
}

TEST(ParticipantStep, MutatedEntriesAreRejected) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "mutate");
    auto alice = initiator_start(ring.sessions[0]);
    auto bumped = alice;
    bumped.entries[0].s_pre = bumped.entries[0].s_pre + prod().scalar(1);
    EXPECT_EQ(error_code([&] { participant_step(ring.sessions[1], bumped); }), Errc::kBadPreSignature);
    auto challenge = alice;
    challenge.entries[0].c = challenge.entries[0].c + prod().scalar(1);
    EXPECT_EQ(error_code([&] { participant_step(ring.sessions[1], challenge); }), Errc::kChallengeMismatch);
    auto other_session = alice;
    other_session.session_id = "other";
    EXPECT_EQ(error_code([&] { participant_step(ring.sessions[1], other_session); }), Errc::kMalformedBundle);
    auto identity_T = alice;
    identity_T.T = prod().identity();
    EXPECT_EQ(error_code([&] { participant_step(ring.sessions[1], identity_T); }), Errc::kMalformedBundle);
    auto duplicated = alice;
    duplicated.entries.push_back(alice.entries[0]);
    EXPECT_EQ(error_code([&] { participant_step(ring.sessions[1], duplicated); }), Errc::kMalformedBundle);
    EXPECT_EQ(ring.sessions[1].phase(), Phase::kInit);
}

TEST(ParticipantStep, UnregisteredPreSignatureIsRejected) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "unregistered");
    auto twin = Ring::make(3, prod(), fixture::toy(), "unregistered");
    // The twin's hub never saw this pre-signature.
    auto alice = initiator_start(ring.sessions[0]);
    EXPECT_EQ(error_code([&] { participant_step(twin.sessions[1], alice); }), Errc::kUnknownPreSignature);
}

TEST(ParticipantStep, RingCompletenessOverAllOmissionPatterns) {
    for (std::size_t n = 2; n <= 5; ++n) {
        auto honest = Ring::make(n, prod(), fixture::toy(), "omission");
        auto received = honest.run_ring();
        const auto& full = received[0];
        for (std::size_t pos = 1; pos < n; ++pos) {
            for (std::uint32_t mask = 0; mask < (1u << pos); ++mask) {
                auto fresh = Ring::make(n, prod(), fixture::toy(), "omission");
                for (const auto& ps : honest.hub->presig_store()) fresh.hub->register_presig(ps);
                PreSigBundle b{full.session_id, full.T, {}};
                for (std::size_t j = 0; j < pos; ++j) {
                    if (mask & (1u << j)) b.entries.push_back(full.entries[j]);
                }
                bool complete = mask == (1u << pos) - 1;
                if (complete) {
                    EXPECT_NO_THROW(participant_step(fresh.sessions[pos], b)) << n << "/" << pos;
                } else {
                    EXPECT_EQ(error_code([&] { participant_step(fresh.sessions[pos], b); }),
                              Errc::kMissingPredecessor)
                        << n << "/" << pos << "/" << mask;
                }
            }
        }
    }
}

TEST(Finalize, HonestThreeParty) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "finalize");
    auto complete = ring.run_ring()[0];
    auto s1 = finalize(ring.sessions[0], complete);
    EXPECT_TRUE(schnorr::verify_full(s1, ring.keys[0].pk));
    EXPECT_EQ(schnorr::extract_secret(s1.s, ring.sessions[0].own_presig()->s_pre), *ring.sessions[0].secret());
    EXPECT_EQ(ring.sessions[0].phase(), Phase::kFinalized);
    EXPECT_EQ(error_code([&] { finalize(ring.sessions[0], complete); }), Errc::kWrongPhase);
    EXPECT_EQ(error_code([&] { finalize(ring.sessions[1], complete); }), Errc::kNotInitiator);
}

TEST(Finalize, IncompleteBundle) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "incomplete");
    auto alice = initiator_start(ring.sessions[0]);
    auto bob = participant_step(ring.sessions[1], alice);
    EXPECT_EQ(error_code([&] { finalize(ring.sessions[0], bob); }), Errc::kIncompleteBundle);
    EXPECT_EQ(ring.sessions[0].phase(), Phase::kCollecting);
}

TEST(ObserveAndComplete, BobCompletesFromAlicesBroadcast) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "observe");
    auto complete = ring.run_ring()[0];
    auto s1 = finalize(ring.sessions[0], complete);
    auto p1 = *ring.sessions[0].own_presig();
    auto bob = observe_and_complete(ring.sessions[1], s1, p1);
    EXPECT_TRUE(schnorr::verify_full(bob, ring.keys[1].pk));
    EXPECT_EQ(ring.sessions[1].phase(), Phase::kCompleted);
    EXPECT_EQ(*ring.sessions[1].secret(), *ring.sessions[0].secret());
    auto again = observe_and_complete(ring.sessions[0], s1, p1);
    EXPECT_EQ(again, s1);
    EXPECT_EQ(*ring.sessions[0].secret(), schnorr::extract_secret(s1.s, p1.s_pre));
    EXPECT_EQ(error_code([&] { observe_and_complete(ring.sessions[1], s1, p1); }), Errc::kWrongPhase);
}

TEST(ObserveAndComplete, CrossSessionPairIsSecretMismatch) {
    auto a = Ring::make(3, prod(), fixture::toy(), "cross-a");
    auto b = Ring::make(3, prod(), fixture::toy(), "cross-b");
    auto sa = finalize(a.sessions[0], a.run_ring()[0]);
    b.run_ring();
    EXPECT_EQ(error_code([&] { observe_and_complete(b.sessions[1], sa, *a.sessions[0].own_presig()); }),
              Errc::kSecretMismatch);
    auto forged = sa;
    forged.s = forged.s + prod().scalar(1);
    EXPECT_EQ(error_code([&] { observe_and_complete(a.sessions[1], forged, *a.sessions[0].own_presig()); }),
              Errc::kSecretMismatch);
}

TEST(ObserveAndComplete, UnaccumulatedPreSignature) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "unacc");
    auto complete = ring.run_ring()[0];
    finalize(ring.sessions[0], complete);
    const auto& t = *ring.sessions[0].secret();
    auto nonce = schnorr::NoncePair::derive(prod(), as_bytes("side"));
    auto c = schnorr::compute_challenge(nonce.R, complete.T, ring.keys[0].pk, ring.hub->binding(),
                                        ring.terms.messages[0].encode());
    schnorr::PreSignature side{"P1", c, schnorr::pre_sign(ring.keys[0], nonce, c), nonce.R, complete.T};
    EXPECT_EQ(error_code([&] { observe_and_complete(ring.sessions[2], schnorr::complete(side, t), side); }),
              Errc::kUnknownPreSignature);
}

TEST(ObserveAndComplete, UniversalExtractionAcrossParties) {
    auto ring = Ring::make(5, prod(), fixture::toy(), "universal");
    auto complete = ring.run_ring()[0];
    std::vector<schnorr::FullSignature> fulls{finalize(ring.sessions[0], complete)};
    for (std::size_t i = 1; i < 5; ++i) {
        fulls.push_back(observe_and_complete(ring.sessions[i], fulls[i - 1], *ring.sessions[i - 1].own_presig()));
    }
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_TRUE(schnorr::verify_full(fulls[i], ring.keys[i].pk));
        for (std::size_t j = 0; j < 5; ++j) {
            EXPECT_EQ(schnorr::extract_secret(fulls[i].s, ring.sessions[i].own_presig()->s_pre),
                      schnorr::extract_secret(fulls[j].s, ring.sessions[j].own_presig()->s_pre));
        }
    }
}

TEST(ObserveAndComplete, SkippedPartySignsLate) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "late");
    auto alice = initiator_start(ring.sessions[0]);
    auto bob = participant_step(ring.sessions[1], alice);
    auto complete = participant_step(ring.sessions[2], bob);
    auto s1 = finalize(ring.sessions[0], complete);
    auto fresh = session_init(ring.terms, ring.hub, ring.keys[1], as_bytes("other-seed"));
    auto late = observe_and_complete(fresh, s1, alice.entries[0]);
    EXPECT_TRUE(schnorr::verify_full(late, ring.keys[1].pk));
}

TEST(Session, PhasesAreMonotone) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "phases");
    std::vector<Phase> seen{ring.sessions[0].phase()};
    auto bundle = initiator_start(ring.sessions[0]);
    seen.push_back(ring.sessions[0].phase());
    bundle = participant_step(ring.sessions[1], bundle);
    bundle = participant_step(ring.sessions[2], bundle);
    auto s1 = finalize(ring.sessions[0], bundle);
    seen.push_back(ring.sessions[0].phase());
    observe_and_complete(ring.sessions[0], s1, *ring.sessions[0].own_presig());
    seen.push_back(ring.sessions[0].phase());
    for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_LT(static_cast<int>(seen[i - 1]), static_cast<int>(seen[i]));
    abort_session(ring.sessions[0]);
    EXPECT_EQ(ring.sessions[0].phase(), Phase::kCompleted);
    abort_session(ring.sessions[1]);
    EXPECT_EQ(ring.sessions[1].phase(), Phase::kAborted);
}

TEST(DirectMode, TwoPartyWithoutAccumulators) {
    auto ring = Ring::make(2, prod(), fixture::toy(), "direct", SwapMode::kDirect);
    EXPECT_EQ(ring.hub->binding().mode(), schnorr::ChallengeBinding::Mode::kDirect);
    auto complete = ring.run_ring()[0];
    auto s1 = finalize(ring.sessions[0], complete);
    auto s2 = observe_and_complete(ring.sessions[1], s1, *ring.sessions[0].own_presig());
    EXPECT_TRUE(schnorr::verify_full(s2, ring.keys[1].pk));
    EXPECT_EQ(s1.c, schnorr::compute_challenge(s1.R, s1.T, ring.keys[0].pk, schnorr::ChallengeBinding::direct(),
                                               ring.terms.messages[0].encode()));
}

TEST(Hub, RegistrationGuards) {
    auto ring = Ring::make(3, prod(), fixture::toy(), "hub");
    auto alice = initiator_start(ring.sessions[0]);
    auto ps = alice.entries[0];
    EXPECT_NO_THROW(ring.hub->register_presig(ps));
    EXPECT_EQ(ring.hub->presig_store().size(), 1u);
    auto foreign = ps;
    foreign.party_id = "Eve";
    EXPECT_EQ(error_code([&] { ring.hub->register_presig(foreign); }), Errc::kBadPreSignature);
    auto wrong_msg = ps;
    wrong_msg.party_id = "P2";
    EXPECT_EQ(error_code([&] { ring.hub->register_presig(wrong_msg); }), Errc::kBadPreSignature);
    auto bad = ps;
    bad.s_pre = bad.s_pre + prod().scalar(1);
    EXPECT_EQ(error_code([&] { ring.hub->register_presig(bad); }), Errc::kBadPreSignature);
    auto w = ring.hub->presig_witness(ps);
    EXPECT_TRUE(acc::verify_membership(fixture::toy(), ring.hub->presig_digest(), ps.encode(), w));
    auto kw = ring.hub->key_witness(ring.keys[2].pk);
    EXPECT_TRUE(acc::verify_membership(fixture::toy(), ring.hub->keys_digest(), ring.keys[2].pk.encode(), kw));
    auto eve = schnorr::KeyPair::derive(prod(), as_bytes("eve"));
    EXPECT_EQ(error_code([&] { ring.hub->key_witness(eve.pk); }), Errc::kNotMember);
}

} // namespace
} // namespace mpswap::swap
