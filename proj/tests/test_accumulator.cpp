#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "mpswap/acc/manager.hpp"
#include "mpswap/acc/multiset.hpp"
#include "mpswap/acc/primes.hpp"
#include "mpswap/acc/rsa_accumulator.hpp"
#include "mpswap/crypto/drbg.hpp"
#include "mpswap/error.hpp"
#include "oracles.hpp"

namespace mpswap::acc {
namespace {

const RsaParams& toy() {
    static const RsaParams p = toy_params(as_bytes("test/toy"));
    return p;
}

// The hand-checkable toy modulus 187 = 11 * 17 with g = 3.
RsaParams tiny187() { return RsaParams::from_values(187, 3, 8, 10); }

Bytes elem(std::uint64_t i) {
    ByteWriter w;
    w.u64(i);
    return std::move(w).take();
}

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

TEST(Setup, DeterministicAndSeedSensitive) {
    auto a = toy_params(as_bytes("seed-a"));
    EXPECT_EQ(a, toy_params(as_bytes("seed-a")));
    EXPECT_NE(a.modulus, toy_params(as_bytes("seed-b")).modulus);
    EXPECT_EQ(mpz_sizeinbase(a.modulus.get_mpz_t(), 2), 64u);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.generator.get_mpz_t(), a.modulus.get_mpz_t());
    EXPECT_EQ(g, 1);
    EXPECT_LE(2 * a.generator, a.modulus);
    EXPECT_EQ(mpz_probab_prime_p(a.modulus.get_mpz_t(), 30), 0);
    EXPECT_EQ(RsaParams::decode(a.encode()), a);
    EXPECT_THROW(setup(62, as_bytes("s"), 32, 20), Error);
}

TEST(Setup, RejectsBadValues) {
    EXPECT_THROW(RsaParams::from_values(187, 100, 8, 10), Error);
    EXPECT_THROW(RsaParams::from_values(187, 11, 8, 10), Error);
    EXPECT_THROW(RsaParams::from_values(187, 3, 4, 10), Error);
}

TEST(HashToPrime, DeterministicPrimeOfExactSize) {
    for (unsigned bits : {16u, 32u, 64u, 128u}) {
        auto p = hash_to_prime("t", as_bytes("x"), bits, 20);
        EXPECT_EQ(p, hash_to_prime("t", as_bytes("x"), bits, 20));
        EXPECT_EQ(mpz_sizeinbase(p.get_mpz_t(), 2), bits);
        EXPECT_NE(mpz_probab_prime_p(p.get_mpz_t(), 40), 0);
    }
}

TEST(HashToPrime, ThousandDistinctInputsGiveDistinctPrimes) {
    std::set<mpz_class> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        auto p = element_prime(toy(), elem(i));
        EXPECT_NE(mpz_probab_prime_p(p.get_mpz_t(), 40), 0);
        seen.insert(p);
    }
    EXPECT_EQ(seen.size(), 1000u);
}

TEST(MillerRabin, AgreesWithGmpOnSmallRange) {
    for (unsigned long n = 0; n < 5000; ++n) {
        mpz_class v(n);
        EXPECT_EQ(is_probable_prime(v, 20), mpz_probab_prime_p(v.get_mpz_t(), 40) != 0) << n;
    }
    // Carmichael numbers and a strong pseudoprime to base 2.
    for (unsigned long n : {561ul, 1105ul, 1729ul, 2047ul, 3215031751ul}) EXPECT_FALSE(is_probable_prime(n, 20));
}

TEST(Multiset, UnionAndDifferenceFollowMultiplicities) {
    auto a = Multiset::of({to_bytes("x"), to_bytes("x"), to_bytes("y")});
    auto b = Multiset::of({to_bytes("x"), to_bytes("z")});
    auto u = a.union_with(b);
    EXPECT_EQ(u.count(to_bytes("x")), 3u);
    EXPECT_EQ(u.size(), 5u);
    auto d = a.difference(b);
    EXPECT_EQ(d.count(to_bytes("x")), 1u);
    EXPECT_EQ(d.count(to_bytes("z")), 0u);
    EXPECT_EQ(d.size(), 2u);
    EXPECT_TRUE(a.includes(d));
    EXPECT_FALSE(a.includes(b));
    EXPECT_EQ(error_code([&] { a.remove(to_bytes("z")); }), Errc::kNotMember);
    a.remove(to_bytes("y"));
    EXPECT_FALSE(a.contains(to_bytes("y")));
    EXPECT_EQ(a.entries().count(to_bytes("y")), 0u);
}

TEST(Digest, HandComputedToyValues) {
    auto p = tiny187();
    EXPECT_EQ(digest(p, Multiset{}).value.value(), 3);
    EXPECT_EQ(qr_pow(p, QrElement::make(p, 3), 5).value(), 56);
    // Canonical representatives live in [1, 93]: 3^7 = 130 (mod 187) folds to 57.
    auto pi = qr_pow(p, QrElement::make(p, 3), 7);
    EXPECT_EQ(pi.value(), 57);
    EXPECT_EQ(qr_pow(p, pi, 5), qr_pow(p, QrElement::make(p, 3), 35));
    EXPECT_EQ(QrElement::make(p, 186).value(), 1);
    EXPECT_THROW(QrElement::make(p, 11), Error);
}

TEST(Digest, EmptyIsGeneratorAndOrderIndependent) {
    EXPECT_EQ(empty_digest(toy()).value.value(), toy().generator);
    Drbg rng("order");
    std::vector<Bytes> elems;
    for (int i = 0; i < 10; ++i) elems.push_back(rng.bytes(8));
    auto d1 = digest(toy(), Multiset::of(elems));
    std::reverse(elems.begin(), elems.end());
    auto d2 = empty_digest(toy());
    for (const auto& e : elems) d2 = insert(toy(), d2, e);
    EXPECT_EQ(d1, d2);
    EXPECT_EQ(d1.value.value(), oracle::recompute_digest(toy(), Multiset::of(elems)));
}

TEST(Insert, MatchesRecomputeIncludingRepeats) {
    auto e = to_bytes("e");
    auto once = insert(toy(), empty_digest(toy()), e);
    EXPECT_EQ(once, digest(toy(), Multiset::of({e})));
    auto twice = insert(toy(), once, e);
    EXPECT_EQ(twice.value.value(), oracle::recompute_digest(toy(), Multiset::of({e, e})));
    auto ab = insert(toy(), insert(toy(), empty_digest(toy()), to_bytes("a")), to_bytes("b"));
    auto ba = insert(toy(), insert(toy(), empty_digest(toy()), to_bytes("b")), to_bytes("a"));
    EXPECT_EQ(ab, ba);
}

TEST(Membership, SingletonAndAbsent) {
    auto s = Multiset::of({to_bytes("only")});
    auto w = prove_membership(toy(), s, to_bytes("only"));
    EXPECT_EQ(w.pi.value(), toy().generator);
    EXPECT_TRUE(verify_membership(toy(), digest(toy(), s), to_bytes("only"), w));
    EXPECT_EQ(error_code([&] { prove_membership(toy(), s, to_bytes("nope")); }), Errc::kNotMember);
}

TEST(Membership, WitnessIsResidualProduct) {
    Drbg rng("residual");
    Multiset s;
    for (int i = 0; i < 12; ++i) s.insert(rng.bytes(6));
    for (const auto& [e, n] : s) {
        auto rest = s;
        rest.remove(e);
        auto w = prove_membership(toy(), s, e);
        EXPECT_EQ(w.pi.value(), oracle::recompute_digest(toy(), rest));
        EXPECT_TRUE(verify_membership(toy(), digest(toy(), s), e, w));
    }
}

TEST(Membership, StaleDigestAndOtherElementFail) {
    auto s = Multiset::of({to_bytes("a"), to_bytes("b")});
    auto d = digest(toy(), s);
    auto w = prove_membership(toy(), s, to_bytes("a"));
    EXPECT_FALSE(verify_membership(toy(), d, to_bytes("b"), w));
    auto d2 = insert(toy(), d, to_bytes("c"));
    EXPECT_FALSE(verify_membership(toy(), d2, to_bytes("a"), w));
    EXPECT_EQ(MembershipWitness::decode(toy(), w.encode(toy())), w);
}

TEST(NonMembership, EmptySetAndVerification) {
    auto w = prove_nonmembership(toy(), Multiset{}, to_bytes("x"));
    EXPECT_EQ(w.a, 1);
    EXPECT_EQ(w.B.value(), 1);
    EXPECT_TRUE(verify_nonmembership(toy(), empty_digest(toy()), to_bytes("x"), w));

    auto s = Multiset::of({to_bytes("a"), to_bytes("b"), to_bytes("c")});
    auto d = digest(toy(), s);
    auto nw = prove_nonmembership(toy(), s, to_bytes("z"));
    EXPECT_TRUE(verify_nonmembership(toy(), d, to_bytes("z"), nw));
    // Bezout identity against the independent product.
    mpz_class x = element_prime(toy(), to_bytes("a")) * element_prime(toy(), to_bytes("b")) *
                  element_prime(toy(), to_bytes("c"));
    mpz_class h = element_prime(toy(), to_bytes("z"));
    mpz_class b = (1 - nw.a * x) / h;
    EXPECT_EQ(nw.a * x + b * h, 1);
    auto mutated = nw;
    mutated.a += 1;
    EXPECT_FALSE(verify_nonmembership(toy(), d, to_bytes("z"), mutated));
    EXPECT_EQ(NonMembershipWitness::decode(toy(), nw.encode(toy())), nw);
    EXPECT_EQ(error_code([&] { prove_nonmembership(toy(), s, to_bytes("a")); }), Errc::kIsMember);
    auto later = insert(toy(), d, to_bytes("z"));
    EXPECT_FALSE(verify_nonmembership(toy(), later, to_bytes("z"), nw));
}

TEST(NonMembership, ExclusiveWithMembership) {
    Drbg rng("exclusive");
    Multiset s;
    std::vector<Bytes> universe;
    for (int i = 0; i < 30; ++i) universe.push_back(rng.bytes(4));
    for (int i = 0; i < 15; ++i) s.insert(universe[rng.uniform(universe.size())]);
    auto d = digest(toy(), s);
    for (const auto& e : universe) {
        bool member = false, non_member = false;
        try {
            member = verify_membership(toy(), d, e, prove_membership(toy(), s, e));
        } catch (const Error&) {
        }
        try {
            non_member = verify_nonmembership(toy(), d, e, prove_nonmembership(toy(), s, e));
        } catch (const Error&) {
        }
        EXPECT_NE(member, non_member);
        EXPECT_EQ(member, s.contains(e));
    }
}

TEST(BatchInsert, SingleMatchesInsertAndFiftyMatchOracle) {
    auto d = digest(toy(), Multiset::of({to_bytes("base")}));
    std::vector<Bytes> one{to_bytes("y")};
    auto r1 = batch_insert_prove(toy(), d, one);
    EXPECT_EQ(r1.digest, insert(toy(), d, to_bytes("y")));
    EXPECT_TRUE(batch_insert_verify(toy(), d, r1.digest, one, r1.proof));

    Drbg rng("batch50");
    std::vector<Bytes> elems;
    auto all = Multiset::of({to_bytes("base")});
    for (int i = 0; i < 50; ++i) {
        elems.push_back(rng.bytes(8));
        all.insert(elems.back());
    }
    auto r = batch_insert_prove(toy(), d, elems);
    EXPECT_EQ(r.digest.value.value(), oracle::recompute_digest(toy(), all));
    EXPECT_TRUE(batch_insert_verify(toy(), d, r.digest, elems, r.proof));
    // Q^ell * d^(x mod ell) == d' recomputed with plain integers.
    mpz_class x = 1;
    for (const auto& e : elems) x *= element_prime(toy(), e);
    mpz_class lhs = oracle::qr_power(toy(), r.proof.Q.value(), r.proof.ell) *
                    oracle::qr_power(toy(), d.value.value(), x % r.proof.ell) % toy().modulus;
    EXPECT_EQ(QrElement::make(toy(), lhs), r.digest.value);

    auto reordered = elems;
    std::reverse(reordered.begin(), reordered.end());
    EXPECT_TRUE(batch_insert_verify(toy(), d, r.digest, reordered, r.proof));
    auto wrong = elems;
    wrong.pop_back();
    EXPECT_FALSE(batch_insert_verify(toy(), d, r.digest, wrong, r.proof));
    auto tampered = r.proof;
    tampered.Q = qr_mul(toy(), tampered.Q, QrElement::make(toy(), 2));
    EXPECT_FALSE(batch_insert_verify(toy(), d, r.digest, elems, tampered));
    EXPECT_EQ(PoeProof::decode(toy(), r.proof.encode(toy())), r.proof);
}

TEST(BatchRemove, HonestAndAbsent) {
    auto s = Multiset::of({to_bytes("a"), to_bytes("b"), to_bytes("b"), to_bytes("c")});
    std::vector<Bytes> out{to_bytes("b"), to_bytes("c")};
    auto r = batch_remove_prove(toy(), s, out);
    EXPECT_EQ(r.digest.value.value(), oracle::recompute_digest(toy(), Multiset::of({to_bytes("a"), to_bytes("b")})));
    EXPECT_TRUE(batch_remove_verify(toy(), digest(toy(), s), r.digest, out, r.proof));
    EXPECT_FALSE(batch_remove_verify(toy(), digest(toy(), s), r.digest, std::vector<Bytes>{to_bytes("b")}, r.proof));
    std::vector<Bytes> absent{to_bytes("zz")};
    EXPECT_EQ(error_code([&] { batch_remove_prove(toy(), s, absent); }), Errc::kNotMember);
    std::vector<Bytes> too_many{to_bytes("c"), to_bytes("c")};
    EXPECT_EQ(error_code([&] { batch_remove_prove(toy(), s, too_many); }), Errc::kNotMember);
}

TEST(Poe, VerifierExponentBoundIndependentOfBatchSize) {
    std::size_t bound = 0;
    for (std::size_t k = 1; k <= 100; k += 9) {
        std::vector<Bytes> elems;
        for (std::size_t i = 0; i < k; ++i) elems.push_back(elem(1000 * k + i));
        auto d = empty_digest(toy());
        auto r = batch_insert_prove(toy(), d, elems);
        VerifierCost cost;
        EXPECT_TRUE(batch_insert_verify(toy(), d, r.digest, elems, r.proof, &cost));
        EXPECT_LE(cost.max_exponent_bits, toy().prime_bits);
        bound = std::max(bound, cost.max_exponent_bits);
    }
    EXPECT_LE(bound, static_cast<std::size_t>(toy().prime_bits));
}

TEST(MultiSwap, EmptyIdentityAndRandomAgainstOracle) {
    auto s = Multiset::of({to_bytes("a"), to_bytes("b")});
    auto d = digest(toy(), s);
    auto empty = multiswap(toy(), s, {});
    EXPECT_EQ(empty.digest, d);
    EXPECT_FALSE(empty.proof.removal.has_value());
    EXPECT_FALSE(empty.proof.insertion.has_value());
    EXPECT_TRUE(multiswap_verify(toy(), d, d, {}, empty.proof));

    std::vector<SwapPair> identity{{to_bytes("a"), to_bytes("a")}};
    auto id = multiswap(toy(), s, identity);
    EXPECT_EQ(id.digest, d);
    EXPECT_TRUE(multiswap_verify(toy(), d, id.digest, identity, id.proof));

    std::vector<SwapPair> absent{{to_bytes("q"), to_bytes("a")}};
    EXPECT_EQ(error_code([&] { multiswap(toy(), s, absent); }), Errc::kNotMember);

    Drbg rng("multiswap20");
    oracle::CountMap counts;
    std::vector<Bytes> universe;
    for (int i = 0; i < 25; ++i) universe.push_back(rng.bytes(3));
    for (int i = 0; i < 40; ++i) ++counts[universe[rng.uniform(universe.size())]];
    auto set = oracle::to_multiset(counts);
    std::vector<SwapPair> swaps;
    auto budget = counts;
    for (int i = 0; i < 20; ++i) {
        auto it = budget.begin();
        std::advance(it, static_cast<long>(rng.uniform(budget.size())));
        auto x = it->first;
        if (--it->second == 0) budget.erase(it);
        swaps.emplace_back(x, universe[rng.uniform(universe.size())]);
    }
    auto result = multiswap(toy(), set, swaps);
    auto expected = oracle::to_multiset(oracle::apply_swaps(counts, swaps));
    EXPECT_EQ(result.updated, expected);
    EXPECT_EQ(result.digest.value.value(), oracle::recompute_digest(toy(), expected));
    EXPECT_TRUE(multiswap_verify(toy(), digest(toy(), set), result.digest, swaps, result.proof));
    auto wrong = swaps;
    wrong[0].second = to_bytes("other");
    EXPECT_FALSE(multiswap_verify(toy(), digest(toy(), set), result.digest, wrong, result.proof));
}

TEST(Manager, ParseFormatAndReplay) {
    auto op = parse_acc_op("multiswap a:b hex:00ff:c");
    ASSERT_TRUE(op.has_value());
    EXPECT_EQ(op->kind, AccOp::Kind::kMultiSwap);
    EXPECT_EQ(op->swaps.size(), 2u);
    EXPECT_EQ(op->swaps[1].first, (Bytes{0x00, 0xff}));
    EXPECT_EQ(parse_acc_op(op->format())->swaps, op->swaps);
    EXPECT_FALSE(parse_acc_op("").has_value());
    EXPECT_FALSE(parse_acc_op("# note").has_value());
    EXPECT_THROW(parse_acc_op("insert"), Error);
    EXPECT_THROW(parse_acc_op("bogus x"), Error);
    EXPECT_THROW(parse_acc_op("multiswap a"), Error);

    AccumulatorManager m(toy());
    for (const auto* line : {"insert a", "insert b", "batch-insert c d", "remove a", "multiswap b:e",
                             "batch-remove c"}) {
        auto r = m.apply(*parse_acc_op(line));
        EXPECT_EQ(r.after.value.value(), oracle::recompute_digest(toy(), m.elements()));
        if (r.proof) {
            auto parsed = *parse_acc_op(line);
            bool ok = parsed.kind == AccOp::Kind::kBatchInsert
                          ? batch_insert_verify(toy(), r.before, r.after, parsed.elems, *r.proof)
                          : batch_remove_verify(toy(), r.before, r.after, parsed.elems, *r.proof);
            EXPECT_TRUE(ok) << line;
        }
    }
    EXPECT_EQ(m.log().size(), 6u);
    auto replayed = AccumulatorManager::replay(toy(), m.log());
    EXPECT_EQ(replayed.digest(), m.digest());
    EXPECT_EQ(replayed.elements(), m.elements());
    std::ostringstream out;
    m.write_log(out);
    auto text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
    auto w = m.witness(to_bytes("d"));
    EXPECT_TRUE(verify_membership(toy(), m.digest(), to_bytes("d"), w));
    EXPECT_THROW(m.remove(to_bytes("zzz")), Error);
    EXPECT_EQ(m.log().size(), 6u);
}

} // namespace
} // namespace mpswap::acc
