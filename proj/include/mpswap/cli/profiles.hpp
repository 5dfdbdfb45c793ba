#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mpswap/acc/rsa_accumulator.hpp"
#include "mpswap/crypto/group.hpp"

namespace mpswap::cli {

/// $MPSWAP_PROFILE_DIR, if set and non-empty.
std::optional<std::filesystem::path> profile_dir();

/// A resolved group plus the descriptor that rebuilds it offline: a builtin
/// name ("secp256k1", "tiny") or "schoolbook:<p>:<q>:<g>" in hex.
struct GroupProfile {
    std::string descriptor;
    const Group* group = nullptr;
};

/// "production", "secp256k1", "tiny", or <profile dir>/<name>.group.json
/// holding {"p": hex, "q": hex, "g": hex}. Throws Error(kConfig).
GroupProfile resolve_group(std::string_view name);

/// Inverse of GroupProfile::descriptor. Throws Error(kDecode).
const Group& group_from_descriptor(std::string_view descriptor);

/// "toy", "realistic", or <profile dir>/<name>.acc.json holding
/// {"modulus_bits", "prime_bits", "mr_rounds", "seed"}. Throws Error(kConfig).
acc::RsaParams resolve_accumulator(std::string_view name);

} // namespace mpswap::cli
