#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "mpswap/sim/scenario.hpp"

namespace mpswap::cli {

/// Renders a run as a version-1 transcript. Every line is
/// "<body> <hex SHA-256(previous hash || body)>", chained from 32 zero
/// bytes, and the last line is "end <number of preceding lines>".
std::string write_transcript(const sim::ScenarioOutcome& outcome, const sim::ScenarioSpec& spec,
                             std::string_view group_descriptor, std::string_view config_hash_hex);

enum class TranscriptStatus { kOk, kParseError, kVerificationFailed };

struct TranscriptCheck {
    TranscriptStatus status = TranscriptStatus::kOk;
    std::size_t record = 0; // 1-based line of the first failure
    std::size_t records = 0;
    std::string message;
    std::string verdict;
};

/// Structure first (parse errors), then the hash chain, then every
/// signature, challenge, witness, digest and the verdict are recomputed.
TranscriptCheck verify_transcript(std::string_view text);

} // namespace mpswap::cli
