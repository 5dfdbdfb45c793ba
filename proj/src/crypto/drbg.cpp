#include "mpswap/crypto/drbg.hpp"

#include <stdexcept>

namespace mpswap {

Drbg::Drbg(ByteView seed) : seed_(seed.begin(), seed.end()) {}

void Drbg::refill() {
    ByteWriter w;
    w.var(seed_).u64(counter_++);
    block_ = sha256(w.bytes());
    used_ = 0;
}

Bytes Drbg::bytes(std::size_t n) {
    Bytes out;
    out.reserve(n);
    while (out.size() < n) {
        if (used_ == block_.size()) refill();
        out.push_back(block_[used_++]);
    }
    return out;
}

std::uint64_t Drbg::next_u64() {
    auto b = bytes(8);
    std::uint64_t v = 0;
    for (auto x : b) v = (v << 8) | x;
    return v;
}

std::uint64_t Drbg::uniform(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Drbg::uniform bound must be non-zero");
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
        auto v = next_u64();
        if (v < limit) return v % bound;
    }
}

Bytes Drbg::fork(std::string_view label) {
    auto salt = bytes(32);
    return derive_seed(salt, label);
}

Bytes derive_seed(ByteView parent, std::string_view label) {
    auto d = tagged_sha256("seed/derive/v1", {as_bytes(label), parent});
    return Bytes(d.begin(), d.end());
}

} // namespace mpswap
