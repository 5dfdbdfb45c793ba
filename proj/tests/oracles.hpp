#pragma once

#include <gmpxx.h>

#include <map>

#include "mpswap/acc/multiset.hpp"
#include "mpswap/acc/rsa_accumulator.hpp"
#include "mpswap/bytes.hpp"
#include "mpswap/crypto/group.hpp"

namespace mpswap::oracle {

/// ECDSA verification by OpenSSL over secp256k1, fed the scheme's h(m) as the digest.
bool openssl_ecdsa_verify(const GroupElement& Q, const Scalar& hm, const Scalar& r, const Scalar& s);

/// g^{prod primes} mod N by plain modular exponentiation, folded to [1, N/2].
mpz_class qr_power(const acc::RsaParams& params, const mpz_class& base, const mpz_class& exponent);

/// Digest of a multiset recomputed from scratch: one exponentiation by the full product.
mpz_class recompute_digest(const acc::RsaParams& params, const acc::Multiset& set);

/// Multiset kept as a plain count map, independent of acc::Multiset.
using CountMap = std::map<Bytes, long>;
CountMap apply_swaps(CountMap s, const std::vector<std::pair<Bytes, Bytes>>& swaps);
acc::Multiset to_multiset(const CountMap& counts);

} // namespace mpswap::oracle
