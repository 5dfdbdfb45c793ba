#include <stdexcept>

#include "mpswap/crypto/bigint.hpp"
#include "mpswap/crypto/group.hpp"
#include "mpswap/error.hpp"

namespace mpswap {

namespace {

// Prime-order subgroup of Z_p*, written additively: "+" is multiplication
// mod p, k·P is exponentiation and the identity is 1. Elements are stored and
// encoded as fixed-width big-endian residues.
class SchoolbookGroup final : public Group {
  public:
    SchoolbookGroup(mpz_class p, mpz_class q, mpz_class g, std::string id)
        : Group(std::move(id), q), p_(std::move(p)), g_(std::move(g)), width_(byte_length(p_)) {}

    std::size_t element_bytes() const override { return width_; }

    mpz_class coordinate(const GroupElement& e) const override {
        if (e.is_identity()) throw Error(Errc::kInvalidArgument, "coordinate of identity");
        return mpz_from_bytes(e.repr());
    }

  protected:
    Bytes identity_repr() const override { return to_repr(1); }
    Bytes generator_repr() const override { return to_repr(g_); }
    bool is_identity_repr(const Bytes& a) const override { return mpz_from_bytes(a) == 1; }

    Bytes add_repr(const Bytes& a, const Bytes& b) const override {
        mpz_class r = (mpz_from_bytes(a) * mpz_from_bytes(b)) % p_;
        return to_repr(r);
    }

    Bytes neg_repr(const Bytes& a) const override {
        mpz_class r;
        mpz_class v = mpz_from_bytes(a);
        mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
        return to_repr(r);
    }

    Bytes mul_repr(const mpz_class& k, const Bytes& a) const override {
        mpz_class r;
        mpz_class base = mpz_from_bytes(a);
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), k.get_mpz_t(), p_.get_mpz_t());
        return to_repr(r);
    }

    Bytes encode_repr(const Bytes& a) const override { return a; }

    std::optional<Bytes> decode_repr(ByteView data) const override {
        mpz_class v = mpz_from_bytes(data);
        if (v <= 0 || v >= p_) return std::nullopt;
        mpz_class check;
        mpz_powm(check.get_mpz_t(), v.get_mpz_t(), order().get_mpz_t(), p_.get_mpz_t());
        if (check != 1) return std::nullopt;
        return to_repr(v);
    }

  private:
    Bytes to_repr(const mpz_class& v) const { return mpz_to_bytes(v, width_); }

    mpz_class p_;
    mpz_class g_;
    std::size_t width_;
};

} // namespace

std::unique_ptr<Group> Group::schoolbook(const mpz_class& p, const mpz_class& q,
                                         const mpz_class& g, std::string id) {
    if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0 || mpz_probab_prime_p(q.get_mpz_t(), 40) == 0) {
        throw Error(Errc::kInvalidArgument, "schoolbook group needs prime p and q");
    }
    if ((p - 1) % q != 0) throw Error(Errc::kInvalidArgument, "q must divide p - 1");
    if (g <= 1 || g >= p) throw Error(Errc::kInvalidArgument, "generator out of range");
    mpz_class check;
    mpz_powm(check.get_mpz_t(), g.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    if (check != 1) throw Error(Errc::kInvalidArgument, "generator does not have order q");
    return std::make_unique<SchoolbookGroup>(p, q, g, std::move(id));
}

const Group& Group::tiny() {
    static const SchoolbookGroup group(mpz_class("4294967087"), mpz_class("2147483543"),
                                       mpz_class(4), "tiny");
    return group;
}

} // namespace mpswap
