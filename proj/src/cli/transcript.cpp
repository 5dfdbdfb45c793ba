#include "mpswap/cli/transcript.hpp"

#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "mpswap/cli/profiles.hpp"
#include "mpswap/crypto/hash.hpp"
#include "mpswap/error.hpp"

namespace mpswap::cli {

namespace {

constexpr std::string_view kMagic = "mpswap-transcript";
constexpr std::string_view kVersion = "1";

Sha256Digest chain_hash(const Sha256Digest& prev, std::string_view body) {
    Bytes buf(prev.begin(), prev.end());
    buf.insert(buf.end(), body.begin(), body.end());
    return sha256(buf);
}

class Writer {
  public:
    void line(const std::string& body) {
        prev_ = chain_hash(prev_, body);
        text_ += body + " " + to_hex(prev_) + "\n";
        ++count_;
    }
    std::string finish() && {
        line("end " + std::to_string(count_));
        return std::move(text_);
    }

  private:
    Sha256Digest prev_{};
    std::string text_;
    std::size_t count_ = 0;
};

std::string join(std::initializer_list<std::string_view> parts) {
    std::string out;
    for (auto p : parts) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

std::string outcome_token(const chain::SubmitResult& r) {
    return r.accepted ? "accepted" : std::string(chain::reason_name(*r.reason));
}

chain::LockRecord expected_lock(const swap::SwapTerms& terms, std::size_t pos, std::uint64_t base,
                                std::uint64_t window) {
    const auto& m = terms.messages[pos];
    return {m.lock_ref, m.asset, m.amount, m.payer, m.payee, terms.session_id, pos == 0 ? base : base + window};
}

struct Failure {
    TranscriptStatus status;
    std::size_t record;
    std::string message;
};

[[noreturn]] void fail(std::size_t record, std::string message) {
    throw Failure{TranscriptStatus::kVerificationFailed, record, std::move(message)};
}

[[noreturn]] void parse_fail(std::size_t record, std::string message) {
    throw Failure{TranscriptStatus::kParseError, record, std::move(message)};
}

std::vector<std::string> split(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(' ', start);
        if (end == std::string_view::npos) end = s.size();
        out.emplace_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::uint64_t to_u64(const std::string& s, std::size_t record) {
    if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string::npos) {
        parse_fail(record, "expected a number, got '" + s + "'");
    }
    return std::stoull(s);
}

bool known_errc(std::string_view name) {
    for (int i = 0; i <= static_cast<int>(Errc::kConfig); ++i) {
        if (errc_name(static_cast<Errc>(i)) == name) return true;
    }
    return false;
}

// Semantic state rebuilt while reading the records in order.
class Checker {
  public:
    void record(std::size_t idx, const std::vector<std::string>& f);
    std::string finish(std::size_t idx);

  private:
    void need(bool ok, std::size_t idx, const char* what) const {
        if (!ok) fail(idx, std::string("record needs ") + what + " first");
    }
    void arity(const std::vector<std::string>& f, std::size_t n, std::size_t idx) const {
        if (f.size() != n) parse_fail(idx, f[0] + " record needs " + std::to_string(n - 1) + " fields");
    }
    void build_terms(std::size_t idx);
    std::size_t chain_position(const std::string& chain_id, std::size_t idx) const;
    void check_entry(const schnorr::PreSignature& ps, std::size_t idx) const;
    bool known_presig_digest(const acc::Digest& d) const;

    const Group* group_ = nullptr;
    std::optional<acc::RsaParams> params_;
    std::optional<swap::SwapMode> mode_;
    std::string session_;
    std::size_t parties_ = 0;
    std::uint64_t base_ = 0, window_ = 0;
    std::vector<swap::PartyInfo> infos_;
    std::vector<sim::Behavior> behaviors_;
    std::vector<swap::SwapMessage> messages_;
    std::optional<swap::SwapTerms> terms_;
    std::optional<acc::Digest> keys_, msgs_;
    std::optional<GroupElement> T_;
    std::vector<acc::Digest> presig_digests_;
    std::set<Bytes> registered_;
    std::map<std::string, std::vector<Bytes>> accepted_txs_;
    std::vector<sim::LockFate> fates_;
    std::vector<std::size_t> locks_seen_;
    std::vector<std::size_t> claim_events_;
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> accepted_counts_; // count, record
    std::optional<std::string> verdict_;
    std::size_t verdict_record_ = 0;
};

void Checker::build_terms(std::size_t idx) {
    if (terms_) return;
    need(infos_.size() == parties_ && messages_.size() == parties_ && parties_ > 0, idx, "every party and message");
    terms_ = swap::SwapTerms{session_, *mode_, infos_, messages_};
    try {
        terms_->validate();
    } catch (const Error& e) {
        fail(idx, std::string("terms do not validate: ") + e.what());
    }
    fates_.assign(parties_, {});
    locks_seen_.assign(parties_, 0);
    claim_events_.assign(parties_, 0);
    accepted_counts_.assign(parties_, std::nullopt);
    presig_digests_ = {acc::empty_digest(*params_)};
}

std::size_t Checker::chain_position(const std::string& chain_id, std::size_t idx) const {
    for (std::size_t i = 0; i < infos_.size(); ++i) {
        if (infos_[i].chain_id == chain_id) return i;
    }
    fail(idx, "unknown chain " + chain_id);
}

void Checker::check_entry(const schnorr::PreSignature& ps, std::size_t idx) const {
    auto pos = terms_->position_of(ps.party_id);
    if (!pos) fail(idx, "pre-signature from unknown party " + ps.party_id);
    const auto binding = chain::CryptoContext{&*params_, *mode_, *keys_, *msgs_, {}}.binding();
    const auto& pk = infos_[*pos].pk;
    if (schnorr::compute_challenge(ps.R, ps.T, pk, binding, messages_[*pos].encode()) != ps.c) {
        fail(idx, "challenge of " + ps.party_id + " does not recompute");
    }
    if (!schnorr::pre_verify(ps, pk)) fail(idx, "pre-signature of " + ps.party_id + " does not verify");
}

bool Checker::known_presig_digest(const acc::Digest& d) const {
    for (const auto& x : presig_digests_) {
        if (x == d) return true;
    }
    return false;
}

void Checker::record(std::size_t idx, const std::vector<std::string>& f) {
    const auto& kind = f[0];
    if (idx == 1) {
        if (f.size() != 2 || kind != kMagic) parse_fail(idx, "not an mpswap transcript");
        if (f[1] != kVersion) parse_fail(idx, "unsupported transcript version " + f[1]);
        return;
    }
    if (kind == "config") {
        arity(f, 2, idx);
        if (f[1].size() != 64) parse_fail(idx, "config hash must be 64 hex digits");
    } else if (kind == "group") {
        arity(f, 2, idx);
        group_ = &group_from_descriptor(f[1]);
    } else if (kind == "acc") {
        arity(f, 2, idx);
        params_ = acc::RsaParams::decode(from_hex(f[1]));
    } else if (kind == "mode") {
        arity(f, 2, idx);
        mode_ = swap::parse_mode(f[1]);
        if (!mode_) parse_fail(idx, "unknown mode " + f[1]);
    } else if (kind == "session") {
        arity(f, 2, idx);
        session_ = f[1];
    } else if (kind == "schedule") {
        arity(f, 4, idx);
        parties_ = to_u64(f[1], idx);
        base_ = to_u64(f[2], idx);
        window_ = to_u64(f[3], idx);
    } else if (kind == "party") {
        arity(f, 6, idx);
        need(group_ != nullptr, idx, "group");
        if (to_u64(f[1], idx) != infos_.size()) fail(idx, "parties out of order");
        infos_.push_back({f[2], group_->decode_element(from_hex(f[4])), f[3]});
        auto b = sim::Behavior::parse(f[5]);
        if (!b) parse_fail(idx, "unknown behavior " + f[5]);
        behaviors_.push_back(*b);
    } else if (kind == "message") {
        arity(f, 3, idx);
        need(group_ != nullptr, idx, "group");
        if (to_u64(f[1], idx) != messages_.size()) fail(idx, "messages out of order");
        messages_.push_back(swap::SwapMessage::decode(*group_, from_hex(f[2])));
    } else if (kind == "digest") {
        arity(f, 3, idx);
        need(params_ && mode_, idx, "acc and mode");
        build_terms(idx);
        auto d = acc::Digest::decode(*params_, from_hex(f[2]));
        acc::Multiset set;
        if (f[1] == "keys") {
            for (const auto& p : infos_) set.insert(p.pk.encode());
            keys_ = d;
        } else if (f[1] == "msgs") {
            for (const auto& m : messages_) set.insert(m.encode());
            msgs_ = d;
        } else {
            parse_fail(idx, "unknown digest " + f[1]);
        }
        if (acc::digest(*params_, set) != d) fail(idx, f[1] + " digest does not match the recomputed accumulator");
    } else if (kind == "statement") {
        arity(f, 2, idx);
        need(group_ != nullptr, idx, "group");
        T_ = group_->decode_element(from_hex(f[1]));
        if (T_->is_identity()) fail(idx, "adaptor point is the identity");
    } else if (kind == "hop") {
        arity(f, 4, idx);
        need(terms_ && keys_ && msgs_ && T_, idx, "terms, digests and statement");
        auto from = to_u64(f[1], idx), to = to_u64(f[2], idx);
        if (from >= parties_ || to >= parties_) fail(idx, "hop between unknown positions");
        auto bundle = swap::PreSigBundle::decode(*group_, from_hex(f[3]));
        if (bundle.session_id != session_) fail(idx, "bundle for another session");
        if (bundle.T != *T_) fail(idx, "bundle carries a different adaptor point");
        for (const auto& e : bundle.entries) {
            if (e.T != *T_) fail(idx, "entry carries a different adaptor point");
            check_entry(e, idx);
        }
    } else if (kind == "ring-error") {
        arity(f, 3, idx);
        if (to_u64(f[1], idx) >= parties_) fail(idx, "ring error at unknown position");
        if (!known_errc(f[2])) parse_fail(idx, "unknown error code " + f[2]);
    } else if (kind == "register") {
        arity(f, 4, idx);
        need(terms_ && keys_ && msgs_, idx, "terms and digests");
        if (to_u64(f[1], idx) != presig_digests_.size() - 1) fail(idx, "registrations out of order");
        auto ps = schnorr::PreSignature::decode(*group_, from_hex(f[2]));
        check_entry(ps, idx);
        auto elem = ps.encode();
        if (!registered_.insert(elem).second) fail(idx, "pre-signature registered twice");
        auto next = acc::insert(*params_, presig_digests_.back(), elem);
        if (acc::Digest::decode(*params_, from_hex(f[3])) != next) fail(idx, "pre-signature digest does not recompute");
        presig_digests_.push_back(next);
    } else if (kind == "tx") {
        arity(f, 8, idx);
        need(terms_ && keys_ && msgs_, idx, "terms and digests");
        auto pos = chain_position(f[1], idx);
        to_u64(f[2], idx);
        auto presig_digest = acc::Digest::decode(*params_, from_hex(f[6]));
        if (!known_presig_digest(presig_digest)) fail(idx, "tx checked against an unknown pre-signature digest");
        auto raw = from_hex(f[7]);
        auto tx = chain::ChainTx::decode(*group_, *params_, raw);
        std::optional<chain::RejectReason> recomputed;
        if (tx.session_id != session_) {
            recomputed = chain::RejectReason::kUnknownSession;
        } else {
            recomputed = chain::check_tx_crypto(tx, {&*params_, *mode_, *keys_, *msgs_, presig_digest});
        }
        if (f[5] == "accepted") {
            if (recomputed) fail(idx, "accepted tx fails " + std::string(chain::reason_name(*recomputed)));
            if (tx.message != messages_[pos] || tx.signer_pk != infos_[pos].pk) {
                fail(idx, "accepted tx does not claim this chain's lock for its beneficiary");
            }
            accepted_txs_[f[1]].push_back(raw);
        } else {
            auto reason = chain::parse_reason(f[5]);
            if (!reason) parse_fail(idx, "unknown reject reason " + f[5]);
            bool crypto_reason = *reason <= chain::RejectReason::kPreSigMismatch;
            if (crypto_reason ? recomputed != reason : recomputed.has_value()) {
                fail(idx, "recorded rejection '" + f[5] + "' does not match recomputation");
            }
        }
    } else if (kind == "event") {
        arity(f, 6, idx);
        need(terms_.has_value(), idx, "terms");
        auto pos = chain_position(f[1], idx);
        to_u64(f[2], idx);
        const auto& lock_ref = messages_[pos].lock_ref;
        if (f[4] != lock_ref) fail(idx, "event for an unknown lock");
        auto payload = from_hex(f[5]);
        if (f[3] == "lock") {
            if (payload != expected_lock(*terms_, pos, base_, window_).encode()) fail(idx, "lock differs from the terms");
            ++locks_seen_[pos];
        } else if (f[3] == "claim") {
            const auto& accepted = accepted_txs_[f[1]];
            if (std::find(accepted.begin(), accepted.end(), payload) == accepted.end()) {
                fail(idx, "claim event without an accepted tx");
            }
            auto tx = chain::ChainTx::decode(*group_, *params_, payload);
            if (fates_[pos].claimed || fates_[pos].refunded) fail(idx, "lock settled twice");
            fates_[pos].claimed = true;
            fates_[pos].diverted = tx.signer_pk != messages_[pos].payee;
            ++claim_events_[pos];
        } else if (f[3] == "refund") {
            if (payload != to_bytes(lock_ref)) fail(idx, "refund payload differs from the lock id");
            if (fates_[pos].claimed || fates_[pos].refunded) fail(idx, "lock settled twice");
            fates_[pos].refunded = true;
        } else {
            parse_fail(idx, "unknown event kind " + f[3]);
        }
    } else if (kind == "accepted") {
        arity(f, 3, idx);
        need(terms_.has_value(), idx, "terms");
        accepted_counts_[chain_position(f[1], idx)] = std::pair{static_cast<std::size_t>(to_u64(f[2], idx)), idx};
    } else if (kind == "verdict") {
        arity(f, 2, idx);
        if (!sim::parse_verdict(f[1])) parse_fail(idx, "unknown verdict " + f[1]);
        verdict_ = f[1];
        verdict_record_ = idx;
    } else {
        parse_fail(idx, "unknown record kind '" + kind + "'");
    }
}

std::string Checker::finish(std::size_t idx) {
    need(terms_ && keys_ && msgs_ && T_ && verdict_, idx, "a complete run");
    std::vector<bool> honest;
    for (std::size_t i = 0; i < parties_; ++i) {
        if (locks_seen_[i] != 1) fail(idx, "chain " + infos_[i].chain_id + " lacks its lock event");
        if (!accepted_counts_[i]) fail(idx, "no accepted count for " + infos_[i].chain_id);
        auto accepted = accepted_txs_[infos_[i].chain_id].size();
        if (accepted_counts_[i]->first != accepted || accepted != claim_events_[i]) {
            fail(accepted_counts_[i]->second, "accepted-tx count on " + infos_[i].chain_id + " does not match its records");
        }
        honest.push_back(behaviors_[i].is_honest());
    }
    auto verdict = sim::verdict_name(sim::compute_verdict(honest, fates_));
    if (verdict != *verdict_) fail(verdict_record_, "recorded verdict " + *verdict_ + " but events give " + std::string(verdict));
    return *verdict_;
}

} // namespace

std::string write_transcript(const sim::ScenarioOutcome& outcome, const sim::ScenarioSpec& spec,
                             std::string_view group_descriptor, std::string_view config_hash_hex) {
    const auto& params = spec.acc_params;
    const auto& terms = outcome.terms;
    Writer w;
    w.line(join({kMagic, kVersion}));
    w.line(join({"config", config_hash_hex}));
    w.line(join({"group", group_descriptor}));
    w.line(join({"acc", to_hex(params.encode())}));
    w.line(join({"mode", swap::mode_name(terms.mode)}));
    w.line(join({"session", terms.session_id}));
    w.line(join({"schedule", std::to_string(terms.size()), std::to_string(spec.base_expiry),
                 std::to_string(spec.claim_window)}));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& p = terms.parties[i];
        w.line(join({"party", std::to_string(i), p.id, p.chain_id, to_hex(p.pk.encode()), spec.behavior(i).name()}));
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        w.line(join({"message", std::to_string(i), to_hex(terms.messages[i].encode())}));
    }
    w.line(join({"digest", "keys", to_hex(outcome.acc_keys.encode(params))}));
    w.line(join({"digest", "msgs", to_hex(outcome.acc_msgs.encode(params))}));
    w.line(join({"statement", to_hex(outcome.T.encode())}));
    for (const auto& hop : outcome.hops) {
        w.line(join({"hop", std::to_string(hop.from), std::to_string(hop.to), to_hex(hop.bundle.encode())}));
    }
    for (const auto& e : outcome.ring_errors) {
        w.line(join({"ring-error", std::to_string(e.position), errc_name(e.code)}));
    }
    auto d = acc::empty_digest(params);
    for (std::size_t k = 0; k < outcome.registered.size(); ++k) {
        auto elem = outcome.registered[k].encode();
        d = acc::insert(params, d, elem);
        w.line(join({"register", std::to_string(k), to_hex(elem), to_hex(d.encode(params))}));
    }
    for (const auto& s : outcome.submissions) {
        const auto& a = s.attempt;
        w.line(join({"tx", a.chain_id, std::to_string(a.height), a.actor, a.label, outcome_token(a.result),
                     to_hex(s.presig_digest.encode(params)), to_hex(a.tx.encode(params))}));
    }
    for (const auto& e : outcome.events) {
        w.line(join({"event", e.chain_id, std::to_string(e.height), chain::event_kind_name(e.kind), e.ref,
                     to_hex(e.payload)}));
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        w.line(join({"accepted", terms.parties[i].chain_id, std::to_string(outcome.accepted_per_chain[i])}));
    }
    w.line(join({"verdict", sim::verdict_name(outcome.verdict)}));
    return std::move(w).finish();
}

TranscriptCheck verify_transcript(std::string_view text) {
    TranscriptCheck out;
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            out.status = TranscriptStatus::kParseError;
            out.record = lines.size() + 1;
            out.message = "truncated: last line has no newline";
            return out;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    out.records = lines.size();
    if (lines.empty()) {
        out.status = TranscriptStatus::kParseError;
        out.message = "empty transcript";
        return out;
    }

    try {
        // Structure: every line carries a hash; the last line is the footer.
        std::vector<std::pair<std::string_view, std::string_view>> split_lines;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            auto sp = lines[i].rfind(' ');
            if (sp == std::string_view::npos || lines[i].size() - sp - 1 != 64) {
                parse_fail(i + 1, "line has no chain hash");
            }
            split_lines.emplace_back(lines[i].substr(0, sp), lines[i].substr(sp + 1));
        }
        auto footer = split(split_lines.back().first);
        if (footer.size() != 2 || footer[0] != "end") parse_fail(lines.size(), "missing end record");
        auto count = to_u64(footer[1], lines.size());

        Sha256Digest prev{};
        for (std::size_t i = 0; i < split_lines.size(); ++i) {
            prev = chain_hash(prev, split_lines[i].first);
            if (to_hex(prev) != split_lines[i].second) fail(i + 1, "hash chain broken");
        }
        if (count != lines.size() - 1) fail(lines.size(), "end count does not match the number of records");

        Checker checker;
        for (std::size_t i = 0; i + 1 < split_lines.size(); ++i) {
            try {
                checker.record(i + 1, split(split_lines[i].first));
            } catch (const Error& e) {
                fail(i + 1, e.what());
            }
        }
        try {
            out.verdict = checker.finish(lines.size());
        } catch (const Error& e) {
            fail(lines.size(), e.what());
        }
    } catch (const Failure& f) {
        out.status = f.status;
        out.record = f.record;
        out.message = f.message;
    }
    return out;
}

} // namespace mpswap::cli
