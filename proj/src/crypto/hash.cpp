#include "mpswap/crypto/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

#include "mpswap/crypto/bigint.hpp"

namespace mpswap {

namespace {

using md_ctx_ptr = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

template <std::size_t N>
std::array<std::uint8_t, N> digest(const EVP_MD* md, ByteView data) {
    md_ctx_ptr ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<std::uint8_t, N> out{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != N) {
        throw std::runtime_error("openssl digest failure");
    }
    return out;
}

} // namespace

Sha256Digest sha256(ByteView data) { return digest<32>(EVP_sha256(), data); }
Sha512Digest sha512(ByteView data) { return digest<64>(EVP_sha512(), data); }

Bytes frame_parts(std::string_view domain_tag, const std::vector<ByteView>& parts) {
    ByteWriter w;
    w.str(domain_tag);
    w.u32(static_cast<std::uint32_t>(parts.size()));
    for (auto p : parts) w.var(p);
    return std::move(w).take();
}

Sha256Digest tagged_sha256(std::string_view domain_tag, const std::vector<ByteView>& parts) {
    return sha256(frame_parts(domain_tag, parts));
}

mpz_class mpz_from_bytes(ByteView data) {
    mpz_class v;
    if (!data.empty()) mpz_import(v.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
    return v;
}

std::size_t byte_length(const mpz_class& v) {
    if (v == 0) return 0;
    return (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
}

Bytes mpz_to_bytes(const mpz_class& v, std::size_t width) {
    if (v < 0) throw std::invalid_argument("negative integer export");
    std::size_t len = byte_length(v);
    if (len > width) throw std::invalid_argument("integer too wide for fixed encoding");
    Bytes out(width, 0);
    if (len > 0) {
        std::size_t written = 0;
        mpz_export(out.data() + (width - len), &written, 1, 1, 1, 0, v.get_mpz_t());
    }
    return out;
}

Bytes mpz_to_bytes(const mpz_class& v) { return mpz_to_bytes(v, byte_length(v)); }

std::string mpz_hex(const mpz_class& v) { return v.get_str(16); }

} // namespace mpswap
