#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <memory>
#include <stdexcept>

#include "mpswap/crypto/bigint.hpp"
#include "mpswap/crypto/group.hpp"
#include "mpswap/error.hpp"

namespace mpswap {

namespace {

using ec_group_ptr = std::unique_ptr<EC_GROUP, decltype(&EC_GROUP_free)>;
using ec_point_ptr = std::unique_ptr<EC_POINT, decltype(&EC_POINT_free)>;
using bn_ptr = std::unique_ptr<BIGNUM, decltype(&BN_clear_free)>;
using bn_ctx_ptr = std::unique_ptr<BN_CTX, decltype(&BN_CTX_free)>;

constexpr std::size_t kCompressedSize = 33;
constexpr std::size_t kUncompressedSize = 65;

void check(int rc, const char* what) {
    if (rc != 1) throw std::runtime_error(std::string("openssl: ") + what);
}

bn_ptr to_bn(const mpz_class& v) {
    auto bytes = mpz_to_bytes(v);
    bn_ptr bn(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr), &BN_clear_free);
    if (!bn) throw std::runtime_error("openssl: BN_bin2bn");
    return bn;
}

mpz_class from_bn(const BIGNUM* bn) {
    Bytes buf(static_cast<std::size_t>(BN_num_bytes(bn)));
    BN_bn2bin(bn, buf.data());
    return mpz_from_bytes(buf);
}

// Internal repr: 65-byte uncompressed SEC1 point, or the single byte 0x00 for
// the point at infinity. Keeping the uncompressed form avoids a modular square
// root on every operation; the canonical external encoding is compressed.
class Secp256k1Group final : public Group {
  public:
    Secp256k1Group()
        : Group("secp256k1", mpz_class("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141", 16)),
          group_(EC_GROUP_new_by_curve_name(NID_secp256k1), &EC_GROUP_free) {
        if (!group_) throw std::runtime_error("openssl: secp256k1 unavailable");
        bn_ctx_ptr ctx(BN_CTX_new(), &BN_CTX_free);
        bn_ptr order(BN_new(), &BN_clear_free);
        check(EC_GROUP_get_order(group_.get(), order.get(), ctx.get()), "EC_GROUP_get_order");
        if (from_bn(order.get()) != this->order()) throw std::runtime_error("secp256k1 order mismatch");
        generator_ = to_repr(EC_GROUP_get0_generator(group_.get()), ctx.get());
    }

    std::size_t element_bytes() const override { return kCompressedSize; }

    mpz_class coordinate(const GroupElement& e) const override {
        if (e.is_identity()) throw Error(Errc::kInvalidArgument, "coordinate of identity");
        const auto& r = e.repr();
        return mpz_from_bytes(ByteView(r).subspan(1, 32));
    }

  protected:
    Bytes identity_repr() const override { return Bytes{0x00}; }
    Bytes generator_repr() const override { return generator_; }
    bool is_identity_repr(const Bytes& a) const override { return a.size() == 1; }

    Bytes add_repr(const Bytes& a, const Bytes& b) const override {
        bn_ctx_ptr ctx(BN_CTX_new(), &BN_CTX_free);
        auto pa = from_repr(a, ctx.get());
        auto pb = from_repr(b, ctx.get());
        auto out = new_point();
        check(EC_POINT_add(group_.get(), out.get(), pa.get(), pb.get(), ctx.get()), "EC_POINT_add");
        return to_repr(out.get(), ctx.get());
    }

    Bytes neg_repr(const Bytes& a) const override {
        bn_ctx_ptr ctx(BN_CTX_new(), &BN_CTX_free);
        auto p = from_repr(a, ctx.get());
        check(EC_POINT_invert(group_.get(), p.get(), ctx.get()), "EC_POINT_invert");
        return to_repr(p.get(), ctx.get());
    }

    Bytes mul_repr(const mpz_class& k, const Bytes& a) const override {
        bn_ctx_ptr ctx(BN_CTX_new(), &BN_CTX_free);
        auto p = from_repr(a, ctx.get());
        auto kb = to_bn(k);
        auto out = new_point();
        check(EC_POINT_mul(group_.get(), out.get(), nullptr, p.get(), kb.get(), ctx.get()),
              "EC_POINT_mul");
        return to_repr(out.get(), ctx.get());
    }

    Bytes mul_base_repr(const mpz_class& k) const override {
        bn_ctx_ptr ctx(BN_CTX_new(), &BN_CTX_free);
        auto kb = to_bn(k);
        auto out = new_point();
        check(EC_POINT_mul(group_.get(), out.get(), kb.get(), nullptr, nullptr, ctx.get()),
              "EC_POINT_mul");
        return to_repr(out.get(), ctx.get());
    }

    Bytes encode_repr(const Bytes& a) const override {
        if (is_identity_repr(a)) return Bytes(kCompressedSize, 0x00);
        Bytes out(kCompressedSize);
        out[0] = (a[kUncompressedSize - 1] & 1) ? 0x03 : 0x02;
        std::copy(a.begin() + 1, a.begin() + 33, out.begin() + 1);
        return out;
    }

    std::optional<Bytes> decode_repr(ByteView data) const override {
        bool all_zero = true;
        for (auto b : data) all_zero = all_zero && b == 0;
        if (all_zero) return identity_repr();
        if (data[0] != 0x02 && data[0] != 0x03) return std::nullopt;
        bn_ctx_ptr ctx(BN_CTX_new(), &BN_CTX_free);
        auto p = new_point();
        // oct2point rejects x >= field prime and x values with no curve point.
        if (EC_POINT_oct2point(group_.get(), p.get(), data.data(), data.size(), ctx.get()) != 1) {
            return std::nullopt;
        }
        return to_repr(p.get(), ctx.get());
    }

  private:
    ec_point_ptr new_point() const {
        ec_point_ptr p(EC_POINT_new(group_.get()), &EC_POINT_free);
        if (!p) throw std::runtime_error("openssl: EC_POINT_new");
        return p;
    }

    ec_point_ptr from_repr(const Bytes& a, BN_CTX* ctx) const {
        auto p = new_point();
        if (is_identity_repr(a)) {
            check(EC_POINT_set_to_infinity(group_.get(), p.get()), "EC_POINT_set_to_infinity");
        } else {
            check(EC_POINT_oct2point(group_.get(), p.get(), a.data(), a.size(), ctx), "EC_POINT_oct2point");
        }
        return p;
    }

    Bytes to_repr(const EC_POINT* p, BN_CTX* ctx) const {
        if (EC_POINT_is_at_infinity(group_.get(), p) == 1) return identity_repr();
        Bytes out(kUncompressedSize);
        auto n = EC_POINT_point2oct(group_.get(), p, POINT_CONVERSION_UNCOMPRESSED, out.data(),
                                    out.size(), ctx);
        if (n != kUncompressedSize) throw std::runtime_error("openssl: EC_POINT_point2oct");
        return out;
    }

    ec_group_ptr group_;
    Bytes generator_;
};

} // namespace

const Group& Group::secp256k1() {
    static const Secp256k1Group group;
    return group;
}

} // namespace mpswap
