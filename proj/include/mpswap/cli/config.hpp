#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mpswap/cli/profiles.hpp"
#include "mpswap/sim/scenario.hpp"

namespace mpswap::cli {

/// A scenario run described in JSON:
///
///   {"version": 1, "group": "production", "accumulator": "toy",
///    "parties": 3, "mode": "accumulated", "seed": "demo",
///    "behaviors": {"P3": "dropout-after-finalize"},
///    "expect": "all-completed", "transcript": "run.transcript",
///    "base_expiry": 20, "claim_window": 10, "timing": false}
///
/// Only version, parties and seed are required. behaviors maps party ids
/// (P1 is the initiator) to behavior names, or is an array with one name per
/// party; unlisted parties are honest.
struct RunConfig {
    int version = 1;
    std::string group = "production";
    std::string accumulator = "toy";
    std::size_t parties = 0;
    swap::SwapMode mode = swap::SwapMode::kAccumulated;
    std::string seed;
    std::map<std::size_t, sim::Behavior> behaviors; // by ring position
    std::optional<sim::Verdict> expect;
    std::optional<std::string> transcript;
    std::uint64_t base_expiry = 20;
    std::uint64_t claim_window = 10;
    bool timing = false;

    /// Throws Error(kConfig) on malformed JSON, unknown keys or bad values.
    static RunConfig parse(std::string_view text);

    /// Stable JSON rendering; its SHA-256 goes in the transcript header.
    std::string canonical() const;

    /// Resolves the profiles. Throws Error(kConfig).
    sim::ScenarioSpec to_spec(GroupProfile* resolved = nullptr) const;
};

} // namespace mpswap::cli
