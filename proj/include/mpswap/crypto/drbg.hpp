#pragma once

#include <cstdint>
#include <string_view>

#include "mpswap/bytes.hpp"
#include "mpswap/crypto/hash.hpp"

namespace mpswap {

// Deterministic byte stream: SHA-256(seed || counter). Portable across
// standard libraries, unlike <random> distributions, so simulator schedules
// and transcripts reproduce byte-for-byte.
class Drbg {
  public:
    explicit Drbg(ByteView seed);
    explicit Drbg(std::string_view seed) : Drbg(as_bytes(seed)) {}

    Bytes bytes(std::size_t n);
    std::uint64_t next_u64();
    /// Uniform in [0, bound) by rejection. bound must be non-zero.
    std::uint64_t uniform(std::uint64_t bound);
    /// A fresh independent seed derived from this stream.
    Bytes fork(std::string_view label);

  private:
    void refill();

    Bytes seed_;
    std::uint64_t counter_ = 0;
    Sha256Digest block_{};
    std::size_t used_ = block_.size();
};

/// Stable child seed: SHA-256 over (label, parent).
Bytes derive_seed(ByteView parent, std::string_view label);

} // namespace mpswap
