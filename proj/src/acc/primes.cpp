#include "mpswap/acc/primes.hpp"

#include <array>

#include "mpswap/crypto/bigint.hpp"
#include "mpswap/crypto/hash.hpp"
#include "mpswap/error.hpp"

namespace mpswap::acc {

namespace {

constexpr auto kSmallPrimes = [] {
    std::array<unsigned, 168> out{};
    std::size_t n = 0;
    for (unsigned c = 2; c < 1000; ++c) {
        bool prime = true;
        for (unsigned d = 2; d * d <= c; ++d) {
            if (c % d == 0) {
                prime = false;
                break;
            }
        }
        if (prime) out[n++] = c;
    }
    return out;
}();

Bytes u64_bytes(std::uint64_t v) {
    ByteWriter w;
    w.u64(v);
    return std::move(w).take();
}

} // namespace

bool is_probable_prime(const mpz_class& n, unsigned rounds) {
    if (n < 2) return false;
    for (unsigned p : kSmallPrimes) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) return false;
    }
    // n > 997 from here on, so n - 3 >= 995 and bases lie in [2, n - 2].
    mpz_class n_minus_1 = n - 1;
    mpz_class d = n_minus_1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t()) != 0) {
        d >>= 1;
        ++s;
    }
    const Bytes n_bytes = mpz_to_bytes(n);
    for (unsigned i = 0; i < rounds; ++i) {
        auto h = sha512(frame_parts("acc/mr-base/v1", {n_bytes, u64_bytes(i)}));
        mpz_class a = mpz_from_bytes(h) % (n - 3) + 2;
        mpz_class x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n_minus_1) continue;
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == n_minus_1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

mpz_class hash_to_prime(std::string_view tag, ByteView data, unsigned bits, unsigned rounds) {
    if (bits < 8) throw Error(Errc::kInvalidArgument, "hash_to_prime needs at least 8 bits");
    const std::size_t blocks = (bits + 511) / 512;
    for (std::uint64_t counter = 0;; ++counter) {
        Bytes material;
        for (std::size_t b = 0; b < blocks; ++b) {
            auto h = sha512(frame_parts(tag, {data, u64_bytes(counter), u64_bytes(b)}));
            material.insert(material.end(), h.begin(), h.end());
        }
        mpz_class candidate = mpz_from_bytes(material) >> static_cast<mp_bitcnt_t>(material.size() * 8 - bits);
        mpz_setbit(candidate.get_mpz_t(), bits - 1);
        mpz_setbit(candidate.get_mpz_t(), 0);
        if (is_probable_prime(candidate, rounds)) return candidate;
    }
}

} // namespace mpswap::acc
