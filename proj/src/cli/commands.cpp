#include "mpswap/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mpswap/acc/manager.hpp"
#include "mpswap/cli/config.hpp"
#include "mpswap/cli/profiles.hpp"
#include "mpswap/cli/transcript.hpp"
#include "mpswap/crypto/drbg.hpp"
#include "mpswap/crypto/hash.hpp"
#include "mpswap/ecdsa/adaptor.hpp"
#include "mpswap/error.hpp"
#include "mpswap/schnorr/adaptor.hpp"
#include "mpswap/sim/scenario.hpp"

namespace mpswap::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return buf.str();
}

bool write_file(const std::string& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    return static_cast<bool>(out.flush());
}

const char* yes_no(bool v) { return v ? "yes" : "no"; }

std::string digest_hex(const acc::RsaParams& params, const acc::Digest& d) { return to_hex(d.encode(params)); }

} // namespace

int cmd_run(const std::string& config_path, const std::optional<std::string>& transcript, std::ostream& out,
            std::ostream& err) {
    auto text = read_file(config_path);
    if (!text) {
        err << "error: cannot read config " << config_path << "\n";
        return kExitIo;
    }
    RunConfig config;
    sim::ScenarioSpec spec;
    GroupProfile profile;
    try {
        config = RunConfig::parse(*text);
        spec = config.to_spec(&profile);
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    auto started = std::chrono::steady_clock::now();
    auto outcome = sim::run_scenario(spec);
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);

    const auto& terms = outcome.terms;
    out << "session " << terms.session_id << " parties " << terms.size() << " mode " << swap::mode_name(terms.mode)
        << " group " << profile.descriptor.substr(0, profile.descriptor.find(':')) << "\n";
    for (std::size_t i = 0; i < outcome.parties.size(); ++i) {
        const auto& p = outcome.parties[i];
        out << p.id << " " << p.behavior.name() << " phase=" << swap::phase_name(p.phase)
            << " claimed=" << yes_no(p.claimed) << " paid=" << yes_no(p.outgoing_claimed) << "\n";
    }
    for (const auto& e : outcome.ring_errors) {
        out << "ring-error " << terms.parties[e.position].id << " " << errc_name(e.code) << "\n";
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        out << terms.parties[i].chain_id << " accepted " << outcome.accepted_per_chain[i] << "\n";
    }
    auto attempts = outcome.adversarial_attempts();
    std::size_t adversarial_accepted = 0;
    for (const auto& a : attempts) adversarial_accepted += a.result.accepted ? 1 : 0;
    out << "adversarial-attempts " << attempts.size() << " accepted " << adversarial_accepted << "\n";
    out << "verdict " << sim::verdict_name(outcome.verdict) << "\n";
    if (config.timing) out << "elapsed-ms " << static_cast<long long>(elapsed.count()) << "\n";

    auto path = transcript ? transcript : config.transcript;
    if (path) {
        auto config_hash = to_hex(sha256(as_bytes(config.canonical())));
        auto body = write_transcript(outcome, spec, profile.descriptor, config_hash);
        if (!write_file(*path, body)) {
            err << "error: cannot write transcript " << *path << "\n";
            return kExitIo;
        }
        out << "transcript " << *path << "\n";
    }

    if (config.expect) {
        if (outcome.verdict != *config.expect) {
            err << "verdict " << sim::verdict_name(outcome.verdict) << " but config expects "
                << sim::verdict_name(*config.expect) << "\n";
            return kExitFailed;
        }
        return kExitOk;
    }
    return outcome.verdict == sim::Verdict::kViolation ? kExitFailed : kExitOk;
}

int cmd_verify(const std::string& transcript_path, std::ostream& out, std::ostream& err) {
    auto text = read_file(transcript_path);
    if (!text) {
        err << "error: cannot read transcript " << transcript_path << "\n";
        return kExitIo;
    }
    auto check = verify_transcript(*text);
    switch (check.status) {
    case TranscriptStatus::kOk:
        out << "ok " << check.records << " records verdict " << check.verdict << "\n";
        return kExitOk;
    case TranscriptStatus::kParseError:
        err << "parse error at record " << check.record << ": " << check.message << "\n";
        return kExitParse;
    case TranscriptStatus::kVerificationFailed:
        err << "verification failed at record " << check.record << ": " << check.message << "\n";
        return kExitVerify;
    }
    return kExitVerify;
}

int cmd_acc_demo(const std::string& script_path, const std::string& profile, std::ostream& out, std::ostream& err) {
    auto text = read_file(script_path);
    if (!text) {
        err << "error: cannot read script " << script_path << "\n";
        return kExitIo;
    }
    std::vector<std::pair<std::size_t, acc::AccOp>> ops;
    {
        std::istringstream lines(*text);
        std::string line;
        std::size_t number = 0;
        while (std::getline(lines, line)) {
            ++number;
            try {
                if (auto op = acc::parse_acc_op(line)) ops.emplace_back(number, std::move(*op));
            } catch (const Error& e) {
                err << "script error at line " << number << ": " << e.what() << "\n";
                return kExitUsage;
            }
        }
    }
    acc::RsaParams params;
    try {
        params = resolve_accumulator(profile);
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    acc::AccumulatorManager manager(params);
    out << "modulus " << params.modulus.get_str(16) << "\n";
    out << "g " << digest_hex(params, manager.digest()) << "\n";
    bool all_ok = true;
    for (const auto& [number, op] : ops) {
        acc::AccOpResult r;
        try {
            r = manager.apply(op);
        } catch (const Error& e) {
            err << "line " << number << ": " << e.what() << "\n";
            return kExitFailed;
        }
        bool oracle = acc::digest(params, manager.elements()) == r.after;
        all_ok = all_ok && oracle;
        out << "line " << number << " " << op.format() << "\n";
        out << "  digest " << digest_hex(params, r.after) << " oracle " << (oracle ? "match" : "MISMATCH") << "\n";

        auto report = [&](const char* name, bool ok) {
            all_ok = all_ok && ok;
            out << "  " << name << " " << (ok ? "verified" : "REJECTED") << "\n";
        };
        if (r.proof) {
            out << "  poe Q " << r.proof->Q.value().get_str(16) << " ell " << r.proof->ell.get_str(16) << "\n";
            bool ok = op.kind == acc::AccOp::Kind::kBatchInsert
                          ? acc::batch_insert_verify(params, r.before, r.after, op.elems, *r.proof)
                          : acc::batch_remove_verify(params, r.before, r.after, op.elems, *r.proof);
            report("poe", ok);
        }
        if (r.swap_proof) {
            const auto& sp = *r.swap_proof;
            if (sp.removal) {
                out << "  removal-poe Q " << sp.removal->Q.value().get_str(16) << " ell " << sp.removal->ell.get_str(16)
                    << "\n";
            }
            if (sp.insertion) {
                out << "  insertion-poe Q " << sp.insertion->Q.value().get_str(16) << " ell "
                    << sp.insertion->ell.get_str(16) << "\n";
            }
            report("multiswap", acc::multiswap_verify(params, r.before, r.after, op.swaps, sp));
        }
    }
    out << "final " << digest_hex(params, manager.digest()) << " elements " << manager.elements().size() << "\n";
    return all_ok ? kExitOk : kExitFailed;
}

int cmd_keygen(const std::string& group, const std::string& seed, const std::string& scheme, std::ostream& out,
               std::ostream& err) {
    GroupProfile profile;
    try {
        profile = resolve_group(group);
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (seed.empty()) {
        err << "error: seed must be non-empty\n";
        return kExitUsage;
    }
    const auto& g = *profile.group;
    if (scheme == "schnorr") {
        auto kp = schnorr::KeyPair::derive(g, as_bytes(seed));
        out << "scheme schnorr\ngroup " << g.id() << "\nsk " << to_hex(kp.sk.encode()) << "\npk "
            << to_hex(kp.pk.encode()) << "\n";
    } else if (scheme == "ecdsa") {
        auto kp = ecdsa::EcdsaKeyPair::derive(g, as_bytes(seed));
        out << "scheme ecdsa\ngroup " << g.id() << "\nsk " << to_hex(kp.x.encode()) << "\npk "
            << to_hex(kp.Q.encode()) << "\n";
    } else {
        err << "error: scheme must be schnorr or ecdsa\n";
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_adaptor_demo(const std::string& group, const std::string& seed, const std::string& scheme,
                     const std::string& message, std::ostream& out, std::ostream& err) {
    GroupProfile profile;
    try {
        profile = resolve_group(group);
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (seed.empty()) {
        err << "error: seed must be non-empty\n";
        return kExitUsage;
    }
    const auto& g = *profile.group;
    auto root = to_bytes(seed);
    auto msg = as_bytes(message);
    bool ok = true;
    auto step = [&](const char* name, bool pass) {
        ok = ok && pass;
        out << name << " " << (pass ? "ok" : "FAIL") << "\n";
    };

    if (scheme == "schnorr") {
        auto kp = schnorr::KeyPair::derive(g, derive_seed(root, "demo/key"));
        auto secret = schnorr::AdaptorSecret::derive(g, derive_seed(root, "demo/adaptor"));
        auto nonce = schnorr::NoncePair::derive(g, derive_seed(root, "demo/nonce"));
        auto c = schnorr::compute_challenge(nonce.R, secret.T, kp.pk, schnorr::ChallengeBinding::direct(), msg);
        schnorr::PreSignature ps{"demo", c, schnorr::pre_sign(kp, nonce, c), nonce.R, secret.T};
        out << "pk " << to_hex(kp.pk.encode()) << "\nT " << to_hex(secret.T.encode()) << "\npresig "
            << to_hex(ps.encode()) << "\n";
        step("pre-verify", schnorr::pre_verify(ps, kp.pk));
        auto full = schnorr::complete(ps, secret.t);
        out << "signature " << to_hex(full.encode()) << "\n";
        step("verify", schnorr::verify_full(full, kp.pk));
        auto t = schnorr::extract_secret(full.s, ps.s_pre);
        step("extract", g.mul_base(t) == secret.T);
    } else if (scheme == "ecdsa") {
        auto kp = ecdsa::EcdsaKeyPair::derive(g, derive_seed(root, "demo/key"));
        auto sw = ecdsa::gen_statement_witness(g, derive_seed(root, "demo/statement"));
        step("statement", ecdsa::statement_verify(sw.statement));
        auto presig = ecdsa::p_sign(kp, msg, sw.statement, derive_seed(root, "demo/presign"));
        out << "pk " << to_hex(kp.Q.encode()) << "\nY " << to_hex(sw.statement.Y.encode()) << "\npresig "
            << to_hex(presig.encode()) << "\n";
        step("p-vrfy", ecdsa::p_vrfy(kp.Q, msg, sw.statement, presig));
        auto sig = ecdsa::adapt(presig, sw.y);
        out << "signature " << to_hex(sig.encode()) << "\n";
        step("verify", ecdsa::ecdsa_verify(kp.Q, msg, sig));
        auto y = ecdsa::extract(sig, presig, sw.statement);
        step("extract", y && g.mul_base(*y) == sw.statement.Y);
    } else {
        err << "error: scheme must be schnorr or ecdsa\n";
        return kExitUsage;
    }
    return ok ? kExitOk : kExitFailed;
}

} // namespace mpswap::cli
