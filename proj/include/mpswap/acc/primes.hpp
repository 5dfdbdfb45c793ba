#pragma once

#include <gmpxx.h>

#include <string_view>

#include "mpswap/bytes.hpp"

namespace mpswap::acc {

/// Miller-Rabin with `rounds` bases derived deterministically from n, after
/// trial division by the primes below 1000. Deterministic for a given (n, rounds).
bool is_probable_prime(const mpz_class& n, unsigned rounds);

/// Counter-appended rejection sampling: candidate_i = top `bits` of
/// SHA-512(tag, data, i) with the high and low bits forced to 1; the first
/// candidate passing is_probable_prime is returned. Output has exactly `bits` bits.
mpz_class hash_to_prime(std::string_view tag, ByteView data, unsigned bits, unsigned rounds);

} // namespace mpswap::acc
