#pragma once

#include <gmpxx.h>

#include "mpswap/bytes.hpp"

namespace mpswap {

/// Unsigned big-endian import.
mpz_class mpz_from_bytes(ByteView data);
/// Big-endian export left-padded to `width` bytes. Throws if the value does not fit.
Bytes mpz_to_bytes(const mpz_class& v, std::size_t width);
/// Minimal big-endian export (empty for zero).
Bytes mpz_to_bytes(const mpz_class& v);
std::size_t byte_length(const mpz_class& v);
std::string mpz_hex(const mpz_class& v);

} // namespace mpswap
