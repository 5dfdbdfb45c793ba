#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpswap/bytes.hpp"

namespace mpswap {

class Group;

/// Element of the scalar field Z_q of a group. Always reduced mod q.
/// A default-constructed Scalar is unbound and only good for assignment.
class Scalar {
  public:
    Scalar() = default;
    Scalar(const Group& group, const mpz_class& value);

    const Group& group() const;
    const mpz_class& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    /// Multiplicative inverse. Throws Error(kInvalidArgument) on zero.
    Scalar inverse() const;
    /// Fixed-length big-endian encoding of group().scalar_bytes() bytes.
    Bytes encode() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    friend bool operator==(const Scalar& a, const Scalar& b);

  private:
    const Group* group_ = nullptr;
    mpz_class value_;
};

/// Opaque element of a prime-order group, written additively.
class GroupElement {
  public:
    GroupElement() = default;

    const Group& group() const;
    bool is_identity() const;
    /// Canonical fixed-length encoding (see Group::element_bytes()).
    Bytes encode() const;
    /// Group-internal representation; equal iff the elements are equal.
    const Bytes& repr() const { return repr_; }

    friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
    friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
    friend GroupElement operator-(const GroupElement& a);
    friend GroupElement operator*(const Scalar& k, const GroupElement& p);
    friend bool operator==(const GroupElement& a, const GroupElement& b);

  private:
    friend class Group;
    GroupElement(const Group* group, Bytes repr) : group_(group), repr_(std::move(repr)) {}

    const Group* group_ = nullptr;
    Bytes repr_;
};

/// A cyclic group of prime order q with generator G. Instances are immutable
/// and must outlive every Scalar and GroupElement bound to them; the built-in
/// profiles are process-lifetime singletons.
class Group {
  public:
    Group(const Group&) = delete;
    Group& operator=(const Group&) = delete;
    virtual ~Group() = default;

    const std::string& id() const { return id_; }
    const mpz_class& order() const { return order_; }
    std::size_t scalar_bytes() const { return scalar_bytes_; }
    virtual std::size_t element_bytes() const = 0;

    GroupElement generator() const { return make(generator_repr()); }
    GroupElement identity() const { return make(identity_repr()); }

    Scalar scalar(const mpz_class& v) const { return Scalar(*this, v); }
    Scalar scalar(unsigned long v) const { return Scalar(*this, mpz_class(v)); }
    /// k·G, using precomputation where the backend has it.
    GroupElement mul_base(const Scalar& k) const;

    /// Rejects wrong length and values >= q.
    Scalar decode_scalar(ByteView data) const;
    /// Rejects wrong length, off-curve / off-subgroup values and non-canonical forms.
    GroupElement decode_element(ByteView data) const;

    /// Integer projection used as ECDSA's conversion function f before
    /// reduction mod q: the affine x-coordinate on a curve, the residue
    /// itself in a multiplicative group. Throws on the identity.
    virtual mpz_class coordinate(const GroupElement& p) const = 0;

    /// secp256k1 via OpenSSL. The production profile.
    static const Group& secp256k1();
    /// Order-q subgroup of Z_p* with q = 2147483543, p = 2q + 1, g = 4.
    static const Group& tiny();
    /// Schoolbook subgroup of Z_p* of prime order q generated by g. Validates
    /// that p, q are prime, q | p - 1 and g has order q.
    static std::unique_ptr<Group> schoolbook(const mpz_class& p, const mpz_class& q,
                                             const mpz_class& g, std::string id);
    /// "production" / "secp256k1" / "tiny"; nullptr if unknown.
    static const Group* builtin(std::string_view name);

  protected:
    Group(std::string id, mpz_class order);

    GroupElement make(Bytes repr) const { return GroupElement(this, std::move(repr)); }

    virtual Bytes identity_repr() const = 0;
    virtual Bytes generator_repr() const = 0;
    virtual bool is_identity_repr(const Bytes& a) const = 0;
    virtual Bytes add_repr(const Bytes& a, const Bytes& b) const = 0;
    virtual Bytes neg_repr(const Bytes& a) const = 0;
    virtual Bytes mul_repr(const mpz_class& k, const Bytes& a) const = 0;
    virtual Bytes mul_base_repr(const mpz_class& k) const { return mul_repr(k, generator_repr()); }
    virtual Bytes encode_repr(const Bytes& a) const = 0;
    virtual std::optional<Bytes> decode_repr(ByteView data) const = 0;

  private:
    friend class GroupElement;
    friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
    friend GroupElement operator-(const GroupElement& a);
    friend GroupElement operator*(const Scalar& k, const GroupElement& p);

    std::string id_;
    mpz_class order_;
    std::size_t scalar_bytes_;
};

/// H: domain-separated, length-prefixed SHA-512 reduced mod q.
Scalar hash_to_scalar(const Group& group, std::string_view domain_tag,
                      const std::vector<ByteView>& parts);

/// Deterministic scalar derived from a non-empty seed.
Scalar scalar_random(const Group& group, ByteView seed);

} // namespace mpswap
