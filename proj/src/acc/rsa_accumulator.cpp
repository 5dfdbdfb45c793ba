#include "mpswap/acc/rsa_accumulator.hpp"

#include <algorithm>

#include "mpswap/acc/primes.hpp"
#include "mpswap/crypto/bigint.hpp"
#include "mpswap/crypto/drbg.hpp"
#include "mpswap/crypto/hash.hpp"
#include "mpswap/error.hpp"

namespace mpswap::acc {

namespace {

constexpr std::string_view kElementTag = "acc/element/v1";
constexpr std::string_view kPoeTag = "poe/v1";

mpz_class canonical(const RsaParams& params, const mpz_class& v) {
    mpz_class r = v % params.modulus;
    if (r < 0) r += params.modulus;
    if (2 * r > params.modulus) r = params.modulus - r;
    return r;
}

void scrub(mpz_class& v) {
    auto n = mpz_size(v.get_mpz_t());
    if (n > 0) {
        mp_limb_t* limbs = mpz_limbs_modify(v.get_mpz_t(), static_cast<mp_size_t>(n));
        std::fill(limbs, limbs + n, mp_limb_t{0});
    }
    v = 0;
}

mpz_class random_prime(Drbg& rng, unsigned bits, unsigned rounds) {
    const std::size_t len = (bits + 7) / 8;
    for (;;) {
        mpz_class c = mpz_from_bytes(rng.bytes(len)) >> static_cast<mp_bitcnt_t>(len * 8 - bits);
        mpz_setbit(c.get_mpz_t(), bits - 1);
        mpz_setbit(c.get_mpz_t(), bits - 2);
        mpz_setbit(c.get_mpz_t(), 0);
        for (int step = 0; step < 4096; ++step, c += 2) {
            if (mpz_sizeinbase(c.get_mpz_t(), 2) != bits) break;
            if (is_probable_prime(c, rounds)) return c;
        }
    }
}

mpz_class product(const std::vector<mpz_class>& primes) {
    mpz_class x = 1;
    for (const auto& p : primes) x *= p;
    return x;
}

std::vector<mpz_class> element_primes(const RsaParams& params, std::span<const Bytes> elems) {
    std::vector<mpz_class> out;
    out.reserve(elems.size());
    for (const auto& e : elems) out.push_back(element_prime(params, e));
    return out;
}

QrElement generator(const RsaParams& params) { return QrElement::make(params, params.generator); }

} // namespace

std::size_t RsaParams::modulus_bytes() const { return byte_length(modulus); }

RsaParams RsaParams::from_values(mpz_class modulus, mpz_class generator, unsigned prime_bits,
                                 unsigned mr_rounds) {
    if (modulus < 15) throw Error(Errc::kInvalidArgument, "RSA modulus too small");
    if (generator < 1 || 2 * generator > modulus) {
        throw Error(Errc::kInvalidArgument, "generator must lie in [1, N/2]");
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), generator.get_mpz_t(), modulus.get_mpz_t());
    if (g != 1) throw Error(Errc::kInvalidArgument, "generator not coprime to N");
    if (prime_bits < 8) throw Error(Errc::kInvalidArgument, "prime_bits must be >= 8");
    return RsaParams{std::move(modulus), std::move(generator), prime_bits, mr_rounds};
}

Bytes RsaParams::encode() const {
    ByteWriter w;
    w.var(mpz_to_bytes(modulus)).var(mpz_to_bytes(generator)).u32(prime_bits).u32(mr_rounds);
    return std::move(w).take();
}

RsaParams RsaParams::decode(ByteView data) {
    ByteReader r(data);
    auto n = mpz_from_bytes(r.var());
    auto g = mpz_from_bytes(r.var());
    auto bits = r.u32();
    auto rounds = r.u32();
    r.expect_done();
    try {
        return from_values(n, g, bits, rounds);
    } catch (const Error& e) {
        throw Error(Errc::kDecode, e.what());
    }
}

RsaParams setup(unsigned modulus_bits, ByteView seed, unsigned prime_bits, unsigned mr_rounds) {
    if (modulus_bits < 64 || modulus_bits % 2 != 0) {
        throw Error(Errc::kInvalidArgument, "modulus_bits must be even and >= 64");
    }
    Drbg rng(derive_seed(seed, "acc/setup/primes"));
    mpz_class p = random_prime(rng, modulus_bits / 2, mr_rounds);
    mpz_class q;
    do {
        q = random_prime(rng, modulus_bits / 2, mr_rounds);
    } while (q == p);
    mpz_class n = p * q;
    scrub(p);
    scrub(q);

    RsaParams params{n, 1, prime_bits, mr_rounds};
    for (std::uint64_t counter = 0;; ++counter) {
        ByteWriter w;
        w.var(seed).u64(counter);
        auto h = sha512(frame_parts("acc/setup/generator", {w.bytes()}));
        mpz_class g = canonical(params, mpz_from_bytes(h));
        mpz_class gcd;
        mpz_gcd(gcd.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        if (g >= 2 && gcd == 1) {
            params.generator = g;
            return params;
        }
    }
}

RsaParams toy_params(ByteView seed) { return setup(64, seed, 32, 20); }

RsaParams realistic_params(ByteView seed) { return setup(2048, seed, 128, 40); }

QrElement QrElement::make(const RsaParams& params, const mpz_class& v) {
    mpz_class c = canonical(params, v);
    mpz_class gcd;
    mpz_gcd(gcd.get_mpz_t(), c.get_mpz_t(), params.modulus.get_mpz_t());
    if (c == 0 || gcd != 1) throw Error(Errc::kInvalidArgument, "value not invertible mod N");
    return QrElement(c);
}

Bytes QrElement::encode(const RsaParams& params) const {
    return mpz_to_bytes(value_, params.modulus_bytes());
}

QrElement QrElement::decode(const RsaParams& params, ByteView data) {
    if (data.size() != params.modulus_bytes()) throw Error(Errc::kDecode, "group element has wrong length");
    mpz_class v = mpz_from_bytes(data);
    if (v == 0 || 2 * v > params.modulus) throw Error(Errc::kDecode, "non-canonical quotient group element");
    mpz_class gcd;
    mpz_gcd(gcd.get_mpz_t(), v.get_mpz_t(), params.modulus.get_mpz_t());
    if (gcd != 1) throw Error(Errc::kDecode, "element not invertible mod N");
    return QrElement(v);
}

QrElement qr_mul(const RsaParams& params, const QrElement& a, const QrElement& b) {
    return QrElement::make(params, a.value() * b.value());
}

QrElement qr_pow(const RsaParams& params, const QrElement& base, const mpz_class& e) {
    mpz_class b = base.value();
    mpz_class exp = e;
    if (exp < 0) {
        mpz_invert(b.get_mpz_t(), b.get_mpz_t(), params.modulus.get_mpz_t());
        exp = -exp;
    }
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), params.modulus.get_mpz_t());
    return QrElement::make(params, r);
}

Bytes NonMembershipWitness::encode(const RsaParams& params) const {
    ByteWriter w;
    w.u8(a < 0 ? 1 : 0).var(mpz_to_bytes(abs(a))).raw(B.encode(params));
    return std::move(w).take();
}

NonMembershipWitness NonMembershipWitness::decode(const RsaParams& params, ByteView data) {
    ByteReader r(data);
    auto sign = r.u8();
    if (sign > 1) throw Error(Errc::kDecode, "bad sign byte");
    mpz_class a = mpz_from_bytes(r.var());
    if (sign == 1) a = -a;
    auto b = QrElement::decode(params, r.raw(params.modulus_bytes()));
    r.expect_done();
    return {a, b};
}

Bytes PoeProof::encode(const RsaParams& params) const {
    ByteWriter w;
    w.raw(Q.encode(params)).var(mpz_to_bytes(ell));
    return std::move(w).take();
}

PoeProof PoeProof::decode(const RsaParams& params, ByteView data) {
    ByteReader r(data);
    auto q = QrElement::decode(params, r.raw(params.modulus_bytes()));
    auto ell = mpz_from_bytes(r.var());
    r.expect_done();
    return {q, ell};
}

void VerifierCost::record(const mpz_class& exponent) {
    ++exponentiations;
    std::size_t bits = exponent == 0 ? 0 : mpz_sizeinbase(exponent.get_mpz_t(), 2);
    max_exponent_bits = std::max(max_exponent_bits, bits);
}

mpz_class element_prime(const RsaParams& params, ByteView elem) {
    return hash_to_prime(kElementTag, elem, params.prime_bits, params.mr_rounds);
}

mpz_class element_product(const RsaParams& params, const Multiset& set) {
    mpz_class x = 1;
    for (const auto& [elem, count] : set) {
        mpz_class p = element_prime(params, elem);
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), count);
        x *= pk;
    }
    return x;
}

Digest empty_digest(const RsaParams& params) { return {generator(params)}; }

Digest digest(const RsaParams& params, const Multiset& set) {
    return {qr_pow(params, generator(params), element_product(params, set))};
}

Digest insert(const RsaParams& params, const Digest& d, ByteView elem) {
    return {qr_pow(params, d.value, element_prime(params, elem))};
}

MembershipWitness prove_membership(const RsaParams& params, const Multiset& set, ByteView elem) {
    if (!set.contains(elem)) throw Error(Errc::kNotMember, "cannot prove membership of absent element");
    Multiset rest = set;
    rest.remove(elem);
    return {qr_pow(params, generator(params), element_product(params, rest))};
}

bool verify_membership(const RsaParams& params, const Digest& d, ByteView elem,
                       const MembershipWitness& w) {
    return qr_pow(params, w.pi, element_prime(params, elem)) == d.value;
}

NonMembershipWitness prove_nonmembership(const RsaParams& params, const Multiset& set, ByteView elem) {
    const mpz_class x = element_product(params, set);
    const mpz_class h = element_prime(params, elem);
    mpz_class gcd, s, t;
    // s·h + t·x = gcd
    mpz_gcdext(gcd.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
    if (gcd != 1) throw Error(Errc::kIsMember, "element divides the accumulated product");
    // Normalize a into [0, h) so the verifier's exponent stays prime-sized.
    mpz_class a = t % h;
    if (a < 0) a += h;
    mpz_class b = (1 - a * x) / h;
    return {a, qr_pow(params, generator(params), b)};
}

bool verify_nonmembership(const RsaParams& params, const Digest& d, ByteView elem,
                          const NonMembershipWitness& w) {
    auto lhs = qr_mul(params, qr_pow(params, d.value, w.a), qr_pow(params, w.B, element_prime(params, elem)));
    return lhs == generator(params);
}

mpz_class poe_challenge(const RsaParams& params, const QrElement& base, const QrElement& result,
                        std::vector<mpz_class> primes) {
    std::sort(primes.begin(), primes.end());
    ByteWriter w;
    w.var(base.encode(params)).var(result.encode(params)).u32(static_cast<std::uint32_t>(primes.size()));
    for (const auto& p : primes) w.var(mpz_to_bytes(p));
    return hash_to_prime(kPoeTag, w.bytes(), params.prime_bits, params.mr_rounds);
}

namespace {

PoeProof poe_prove_with_result(const RsaParams& params, const QrElement& base, const QrElement& result,
                               const std::vector<mpz_class>& primes, const mpz_class& x) {
    mpz_class ell = poe_challenge(params, base, result, primes);
    mpz_class quotient;
    mpz_fdiv_q(quotient.get_mpz_t(), x.get_mpz_t(), ell.get_mpz_t());
    return {qr_pow(params, base, quotient), ell};
}

} // namespace

PoeProof poe_prove(const RsaParams& params, const QrElement& base, const std::vector<mpz_class>& primes) {
    mpz_class x = product(primes);
    return poe_prove_with_result(params, base, qr_pow(params, base, x), primes, x);
}

bool poe_verify(const RsaParams& params, const QrElement& base, const QrElement& result,
                const std::vector<mpz_class>& primes, const PoeProof& proof, VerifierCost* cost) {
    mpz_class ell = poe_challenge(params, base, result, primes);
    if (ell != proof.ell) return false;
    // The verifier never touches the full product: only its residue mod ℓ.
    mpz_class r = 1;
    for (const auto& p : primes) r = (r * p) % ell;
    if (cost != nullptr) {
        cost->record(ell);
        cost->record(r);
    }
    auto lhs = qr_mul(params, qr_pow(params, proof.Q, ell), qr_pow(params, base, r));
    return lhs == result;
}

BatchUpdate batch_insert_prove(const RsaParams& params, const Digest& d, std::span<const Bytes> elems) {
    auto primes = element_primes(params, elems);
    mpz_class x = product(primes);
    Digest d_new{qr_pow(params, d.value, x)};
    return {d_new, poe_prove_with_result(params, d.value, d_new.value, primes, x)};
}

bool batch_insert_verify(const RsaParams& params, const Digest& d, const Digest& d_new,
                         std::span<const Bytes> elems, const PoeProof& proof, VerifierCost* cost) {
    return poe_verify(params, d.value, d_new.value, element_primes(params, elems), proof, cost);
}

BatchUpdate batch_remove_prove(const RsaParams& params, const Multiset& set, std::span<const Bytes> elems) {
    Multiset rest = set;
    for (const auto& e : elems) rest.remove(e);
    auto primes = element_primes(params, elems);
    Digest d_new = digest(params, rest);
    mpz_class x = product(primes);
    Digest d_old{qr_pow(params, d_new.value, x)};
    return {d_new, poe_prove_with_result(params, d_new.value, d_old.value, primes, x)};
}

bool batch_remove_verify(const RsaParams& params, const Digest& d, const Digest& d_new,
                         std::span<const Bytes> elems, const PoeProof& proof, VerifierCost* cost) {
    return poe_verify(params, d_new.value, d.value, element_primes(params, elems), proof, cost);
}

MultiSwapResult multiswap(const RsaParams& params, const Multiset& set, std::span<const SwapPair> swaps) {
    if (swaps.empty()) {
        Digest d = digest(params, set);
        return {set, d, {d, std::nullopt, std::nullopt}};
    }
    std::vector<Bytes> removed, inserted;
    for (const auto& [x, y] : swaps) {
        removed.push_back(x);
        inserted.push_back(y);
    }
    auto removal = batch_remove_prove(params, set, removed);
    auto insertion = batch_insert_prove(params, removal.digest, inserted);
    Multiset updated = set;
    for (const auto& x : removed) updated.remove(x);
    for (const auto& y : inserted) updated.insert(y);
    return {std::move(updated), insertion.digest, {removal.digest, removal.proof, insertion.proof}};
}

bool multiswap_verify(const RsaParams& params, const Digest& d, const Digest& d_new,
                      std::span<const SwapPair> swaps, const MultiSwapProof& proof, VerifierCost* cost) {
    if (swaps.empty()) {
        return !proof.removal && !proof.insertion && proof.intermediate == d && d_new == d;
    }
    if (!proof.removal || !proof.insertion) return false;
    std::vector<Bytes> removed, inserted;
    for (const auto& [x, y] : swaps) {
        removed.push_back(x);
        inserted.push_back(y);
    }
    return batch_remove_verify(params, d, proof.intermediate, removed, *proof.removal, cost) &&
           batch_insert_verify(params, proof.intermediate, d_new, inserted, *proof.insertion, cost);
}

} // namespace mpswap::acc
