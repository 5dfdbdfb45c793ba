#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mpswap/acc/multiset.hpp"
#include "mpswap/bytes.hpp"

namespace mpswap::acc {

/// Public parameters of an RSA quotient group Z_N*/{±1}. The factors of N are
/// discarded by setup() and never stored.
struct RsaParams {
    mpz_class modulus;   // N
    mpz_class generator; // g, canonical in [1, N/2]
    unsigned prime_bits = 0;
    unsigned mr_rounds = 0;

    std::size_t modulus_bytes() const;

    /// Validates g in [1, N/2], gcd(g, N) == 1, prime_bits >= 8.
    static RsaParams from_values(mpz_class modulus, mpz_class generator, unsigned prime_bits,
                                 unsigned mr_rounds);

    Bytes encode() const;
    static RsaParams decode(ByteView data);

    friend bool operator==(const RsaParams&, const RsaParams&) = default;
};

/// Deterministic trusted setup: N = p·q from the seed, factors erased.
/// modulus_bits must be >= 64 and even.
RsaParams setup(unsigned modulus_bits, ByteView seed, unsigned prime_bits, unsigned mr_rounds);
/// 64-bit modulus, 32-bit primes.
RsaParams toy_params(ByteView seed);
/// 2048-bit modulus, 128-bit primes.
RsaParams realistic_params(ByteView seed);

/// Element of Z_N*/{±1} held by its canonical representative in [1, N/2].
class QrElement {
  public:
    QrElement() = default;
    /// Canonicalizes v mod N. Throws Error(kInvalidArgument) unless gcd(v, N) == 1.
    static QrElement make(const RsaParams& params, const mpz_class& v);

    const mpz_class& value() const { return value_; }
    Bytes encode(const RsaParams& params) const;
    /// Rejects non-canonical (> N/2), zero and non-invertible values.
    static QrElement decode(const RsaParams& params, ByteView data);

    friend bool operator==(const QrElement& a, const QrElement& b) { return a.value_ == b.value_; }

  private:
    explicit QrElement(mpz_class v) : value_(std::move(v)) {}
    mpz_class value_;
};

QrElement qr_mul(const RsaParams& params, const QrElement& a, const QrElement& b);
/// base^e; a negative exponent inverts the base first.
QrElement qr_pow(const RsaParams& params, const QrElement& base, const mpz_class& e);

/// [S] = g^{prod H(s)}. Equal multisets give equal digests.
struct Digest {
    QrElement value;

    Bytes encode(const RsaParams& params) const { return value.encode(params); }
    static Digest decode(const RsaParams& params, ByteView data) { return {QrElement::decode(params, data)}; }
    friend bool operator==(const Digest&, const Digest&) = default;
};

struct MembershipWitness {
    QrElement pi;

    Bytes encode(const RsaParams& params) const { return pi.encode(params); }
    static MembershipWitness decode(const RsaParams& params, ByteView data) {
        return {QrElement::decode(params, data)};
    }
    friend bool operator==(const MembershipWitness&, const MembershipWitness&) = default;
};

/// Bezout witness: a·x* + b·H(e) = 1 with x* the digest exponent; B = g^b.
struct NonMembershipWitness {
    mpz_class a;
    QrElement B;

    Bytes encode(const RsaParams& params) const;
    static NonMembershipWitness decode(const RsaParams& params, ByteView data);
    friend bool operator==(const NonMembershipWitness&, const NonMembershipWitness&) = default;
};

/// Proof that result = base^x for a public x, checked as Q^ℓ · base^{x mod ℓ} == result.
struct PoeProof {
    QrElement Q;
    mpz_class ell;

    Bytes encode(const RsaParams& params) const;
    static PoeProof decode(const RsaParams& params, ByteView data);
    friend bool operator==(const PoeProof&, const PoeProof&) = default;
};

/// Exponentiation counter filled in by verifiers.
struct VerifierCost {
    std::size_t exponentiations = 0;
    std::size_t max_exponent_bits = 0;

    void record(const mpz_class& exponent);
};

/// H(s): hash_to_prime with the accumulator's prime size.
mpz_class element_prime(const RsaParams& params, ByteView elem);
/// prod H(s) over the multiset, with multiplicity.
mpz_class element_product(const RsaParams& params, const Multiset& set);

Digest empty_digest(const RsaParams& params);
Digest digest(const RsaParams& params, const Multiset& set);
/// [S ∪ {elem}] = [S]^{H(elem)}.
Digest insert(const RsaParams& params, const Digest& d, ByteView elem);

/// g^{prod H over S minus one copy of elem}; no root extraction. Throws kNotMember.
MembershipWitness prove_membership(const RsaParams& params, const Multiset& set, ByteView elem);
bool verify_membership(const RsaParams& params, const Digest& d, ByteView elem,
                       const MembershipWitness& w);

/// Throws kIsMember when gcd(H(elem), x*) != 1.
NonMembershipWitness prove_nonmembership(const RsaParams& params, const Multiset& set, ByteView elem);
/// d^a · B^{H(elem)} == g.
bool verify_nonmembership(const RsaParams& params, const Digest& d, ByteView elem,
                          const NonMembershipWitness& w);

/// Fiat-Shamir prime challenge over (base, result, sorted exponent primes).
mpz_class poe_challenge(const RsaParams& params, const QrElement& base, const QrElement& result,
                        std::vector<mpz_class> primes);
PoeProof poe_prove(const RsaParams& params, const QrElement& base, const std::vector<mpz_class>& primes);
bool poe_verify(const RsaParams& params, const QrElement& base, const QrElement& result,
                const std::vector<mpz_class>& primes, const PoeProof& proof, VerifierCost* cost = nullptr);

struct BatchUpdate {
    Digest digest;
    PoeProof proof;
};

/// d' = d^{prod H(y_i)} with a proof of exponentiation.
BatchUpdate batch_insert_prove(const RsaParams& params, const Digest& d, std::span<const Bytes> elems);
bool batch_insert_verify(const RsaParams& params, const Digest& d, const Digest& d_new,
                         std::span<const Bytes> elems, const PoeProof& proof,
                         VerifierCost* cost = nullptr);

/// d_new = [S \ elems], proven against d = [S]. Throws kNotMember.
BatchUpdate batch_remove_prove(const RsaParams& params, const Multiset& set, std::span<const Bytes> elems);
/// Q^ℓ · d_new^{prod H(x_i) mod ℓ} == d.
bool batch_remove_verify(const RsaParams& params, const Digest& d, const Digest& d_new,
                         std::span<const Bytes> elems, const PoeProof& proof,
                         VerifierCost* cost = nullptr);

using SwapPair = std::pair<Bytes, Bytes>;

/// Empty for an empty swap list; otherwise removal then insertion proofs.
struct MultiSwapProof {
    Digest intermediate;
    std::optional<PoeProof> removal;
    std::optional<PoeProof> insertion;
};

struct MultiSwapResult {
    Multiset updated;
    Digest digest;
    MultiSwapProof proof;
};

/// S_t = S \ {x_i} ∪ {y_i}. Throws kNotMember if some x_i cannot be removed.
MultiSwapResult multiswap(const RsaParams& params, const Multiset& set, std::span<const SwapPair> swaps);
bool multiswap_verify(const RsaParams& params, const Digest& d, const Digest& d_new,
                      std::span<const SwapPair> swaps, const MultiSwapProof& proof,
                      VerifierCost* cost = nullptr);

} // namespace mpswap::acc
