#pragma once

#include <vector>

#include "mpswap/acc/rsa_accumulator.hpp"
#include "mpswap/schnorr/adaptor.hpp"
#include "mpswap/swap/terms.hpp"

namespace mpswap::swap {

// The session's accumulator infrastructure, run by a single honest manager:
// Acc_A over the party keys, Acc_m over the messages, and the pre-signature
// accumulator. Chains hold a read-only handle to it.
class SwapAccumulators {
  public:
    SwapAccumulators(acc::RsaParams params, const SwapTerms& terms);

    const acc::RsaParams& params() const { return params_; }
    SwapMode mode() const { return mode_; }
    const acc::Digest& keys_digest() const { return keys_digest_; }
    const acc::Digest& msgs_digest() const { return msgs_digest_; }
    const acc::Digest& presig_digest() const { return presig_digest_; }

    /// Direct binding in two-party mode, otherwise the accumulated form.
    schnorr::ChallengeBinding binding() const;

    /// Throws Error(kNotMember) for a key outside the session.
    acc::MembershipWitness key_witness(const GroupElement& pk) const;
    acc::MembershipWitness presig_witness(const schnorr::PreSignature& ps) const;
    bool has_presig(const schnorr::PreSignature& ps) const;

    /// Accepts only a pre-signature of a session party over its own message
    /// that pre-verifies; throws kBadPreSignature otherwise. Re-registering
    /// a known pre-signature is a no-op.
    void register_presig(const schnorr::PreSignature& ps);

    /// Every registered pre-signature, in registration order.
    const std::vector<schnorr::PreSignature>& presig_store() const { return store_; }

  private:
    acc::RsaParams params_;
    SwapTerms terms_;
    SwapMode mode_;
    acc::Multiset keys_;
    acc::Multiset presigs_;
    acc::Digest keys_digest_;
    acc::Digest msgs_digest_;
    acc::Digest presig_digest_;
    std::vector<schnorr::PreSignature> store_;
};

} // namespace mpswap::swap
