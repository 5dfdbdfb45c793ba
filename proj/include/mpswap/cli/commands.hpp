#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace mpswap::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailed = 1,     // verdict differs from expect, VIOLATION, or a demo check failed
    kExitUsage = 2,      // bad arguments, malformed config or script
    kExitIo = 3,         // a file could not be read or written
    kExitParse = 4,      // transcript structure is broken
    kExitVerify = 5,     // transcript hash chain or a recomputation failed
};

/// Runs the scenario in a JSON config, prints a summary and writes the
/// transcript to `transcript` (or the config's "transcript" path).
int cmd_run(const std::string& config_path, const std::optional<std::string>& transcript,
            std::ostream& out, std::ostream& err);

/// Re-checks a transcript offline.
int cmd_verify(const std::string& transcript_path, std::ostream& out, std::ostream& err);

/// Applies an accumulator op script, printing each digest next to a
/// recompute-from-scratch oracle and the verification of every proof.
int cmd_acc_demo(const std::string& script_path, const std::string& profile, std::ostream& out,
                 std::ostream& err);

/// Prints a deterministic key pair. scheme: "schnorr" or "ecdsa".
int cmd_keygen(const std::string& group, const std::string& seed, const std::string& scheme,
               std::ostream& out, std::ostream& err);

/// Walks one pre-sign / verify / adapt / extract cycle of the given scheme.
int cmd_adaptor_demo(const std::string& group, const std::string& seed, const std::string& scheme,
                     const std::string& message, std::ostream& out, std::ostream& err);

} // namespace mpswap::cli
