#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpswap {

enum class Errc {
    kDecode,
    kInvalidArgument,
    // schnorr / session
    kNonceReuse,
    kDuplicateParty,
    kEmptySession,
    kInvalidTerms,
    kWrongPhase,
    kNotInitiator,
    kMissingPredecessor,
    kMalformedBundle,
    kBadPreSignature,
    kChallengeMismatch,
    kIncompleteBundle,
    kSecretMismatch,
    kUnknownPreSignature,
    // ecdsa
    kInvalidStatement,
    kZeroWitness,
    // accumulator
    kNotMember,
    kIsMember,
    // chain
    kAlreadyLocked,
    kUnknownLock,
    // cli
    kConfig,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what);

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

} // namespace mpswap
