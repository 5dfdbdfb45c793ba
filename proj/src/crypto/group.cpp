#include "mpswap/crypto/group.hpp"

#include "mpswap/crypto/bigint.hpp"
#include "mpswap/crypto/hash.hpp"
#include "mpswap/error.hpp"

namespace mpswap {

namespace {

const Group& same_group(const Group* a, const Group* b) {
    if (a == nullptr || b == nullptr) throw Error(Errc::kInvalidArgument, "unbound group value");
    if (a != b) throw Error(Errc::kInvalidArgument, "mixing values from different groups");
    return *a;
}

mpz_class mod(const mpz_class& v, const mpz_class& q) {
    mpz_class r = v % q;
    if (r < 0) r += q;
    return r;
}

} // namespace

Group::Group(std::string id, mpz_class order)
    : id_(std::move(id)), order_(std::move(order)), scalar_bytes_(byte_length(order_)) {}

Scalar::Scalar(const Group& group, const mpz_class& value)
    : group_(&group), value_(mod(value, group.order())) {}

const Group& Scalar::group() const {
    if (group_ == nullptr) throw Error(Errc::kInvalidArgument, "unbound scalar");
    return *group_;
}

Scalar Scalar::inverse() const {
    const auto& g = group();
    if (is_zero()) throw Error(Errc::kInvalidArgument, "inverse of zero scalar");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), value_.get_mpz_t(), g.order().get_mpz_t());
    return Scalar(g, inv);
}

Bytes Scalar::encode() const { return mpz_to_bytes(value_, group().scalar_bytes()); }

Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(same_group(a.group_, b.group_), a.value_ + b.value_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(same_group(a.group_, b.group_), a.value_ - b.value_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(same_group(a.group_, b.group_), a.value_ * b.value_);
}

Scalar operator-(const Scalar& a) { return Scalar(a.group(), -a.value_); }

bool operator==(const Scalar& a, const Scalar& b) {
    return a.group_ == b.group_ && a.value_ == b.value_;
}

const Group& GroupElement::group() const {
    if (group_ == nullptr) throw Error(Errc::kInvalidArgument, "unbound group element");
    return *group_;
}

bool GroupElement::is_identity() const { return group().is_identity_repr(repr_); }

Bytes GroupElement::encode() const { return group().encode_repr(repr_); }

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    const auto& g = same_group(a.group_, b.group_);
    return g.make(g.add_repr(a.repr_, b.repr_));
}

GroupElement operator-(const GroupElement& a) {
    const auto& g = a.group();
    return g.make(g.neg_repr(a.repr_));
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }

GroupElement operator*(const Scalar& k, const GroupElement& p) {
    const auto& g = same_group(&k.group(), &p.group());
    return g.make(g.mul_repr(k.value(), p.repr_));
}

bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.repr_ == b.repr_;
}

GroupElement Group::mul_base(const Scalar& k) const {
    same_group(this, &k.group());
    return make(mul_base_repr(k.value()));
}

Scalar Group::decode_scalar(ByteView data) const {
    if (data.size() != scalar_bytes_) throw Error(Errc::kDecode, "scalar has wrong length");
    auto v = mpz_from_bytes(data);
    if (v >= order_) throw Error(Errc::kDecode, "scalar not reduced mod q");
    return Scalar(*this, v);
}

GroupElement Group::decode_element(ByteView data) const {
    if (data.size() != element_bytes()) throw Error(Errc::kDecode, "group element has wrong length");
    auto repr = decode_repr(data);
    if (!repr) throw Error(Errc::kDecode, "bytes do not encode a group element");
    return make(std::move(*repr));
}

const Group* Group::builtin(std::string_view name) {
    if (name == "production" || name == "secp256k1") return &secp256k1();
    if (name == "tiny") return &tiny();
    return nullptr;
}

Scalar hash_to_scalar(const Group& group, std::string_view domain_tag,
                      const std::vector<ByteView>& parts) {
    if (domain_tag.empty()) throw Error(Errc::kInvalidArgument, "empty hash domain tag");
    // 512 bits of output keep the mod-q bias negligible for 256-bit orders.
    auto d = sha512(frame_parts(domain_tag, parts));
    return Scalar(group, mpz_from_bytes(d));
}

Scalar scalar_random(const Group& group, ByteView seed) {
    if (seed.empty()) throw Error(Errc::kInvalidArgument, "scalar_random needs a non-empty seed");
    return hash_to_scalar(group, "scalar/random/v1", {seed});
}

} // namespace mpswap
