#include "mpswap/error.hpp"

namespace mpswap {

std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::kDecode: return "DecodeError";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kNonceReuse: return "NonceReuse";
    case Errc::kDuplicateParty: return "DuplicateParty";
    case Errc::kEmptySession: return "EmptySession";
    case Errc::kInvalidTerms: return "InvalidTerms";
    case Errc::kWrongPhase: return "WrongPhase";
    case Errc::kNotInitiator: return "NotInitiator";
    case Errc::kMissingPredecessor: return "MissingPredecessor";
    case Errc::kMalformedBundle: return "MalformedBundle";
    case Errc::kBadPreSignature: return "BadPreSignature";
    case Errc::kChallengeMismatch: return "ChallengeMismatch";
    case Errc::kIncompleteBundle: return "IncompleteBundle";
    case Errc::kSecretMismatch: return "SecretMismatch";
    case Errc::kUnknownPreSignature: return "UnknownPreSignature";
    case Errc::kInvalidStatement: return "InvalidStatement";
    case Errc::kZeroWitness: return "ZeroWitness";
    case Errc::kNotMember: return "NotMember";
    case Errc::kIsMember: return "IsMember";
    case Errc::kAlreadyLocked: return "AlreadyLocked";
    case Errc::kUnknownLock: return "UnknownLock";
    case Errc::kConfig: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

} // namespace mpswap
