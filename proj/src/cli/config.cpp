#include "mpswap/cli/config.hpp"

#include <set>

#include <json.hpp>

#include "mpswap/error.hpp"

namespace mpswap::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {"version", "group",      "accumulator", "parties",      "mode",
                                          "seed",    "behaviors",  "expect",      "transcript",   "base_expiry",
                                          "claim_window", "timing"};

std::string string_field(const json& j, const char* key) {
    if (!j[key].is_string()) throw Error(Errc::kConfig, std::string(key) + " must be a string");
    return j[key].get<std::string>();
}

std::uint64_t uint_field(const json& j, const char* key) {
    if (!j[key].is_number_unsigned()) throw Error(Errc::kConfig, std::string(key) + " must be a non-negative integer");
    return j[key].get<std::uint64_t>();
}

sim::Behavior behavior_field(const json& v) {
    if (!v.is_string()) throw Error(Errc::kConfig, "behaviors must be strings");
    auto b = sim::Behavior::parse(v.get<std::string>());
    if (!b) throw Error(Errc::kConfig, "unknown behavior '" + v.get<std::string>() + "'");
    return *b;
}

std::size_t party_index(const std::string& id, std::size_t parties) {
    if (id.size() >= 2 && id[0] == 'P' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
        auto k = std::stoull(id.substr(1));
        if (k >= 1 && k <= parties) return k - 1;
    }
    throw Error(Errc::kConfig, "behaviors names unknown party '" + id + "'");
}

} // namespace

RunConfig RunConfig::parse(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::kConfig, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(Errc::kConfig, "config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (kKnownKeys.count(key) == 0) throw Error(Errc::kConfig, "unknown config key '" + key + "'");
    }
    for (const char* key : {"version", "parties", "seed"}) {
        if (!j.contains(key)) throw Error(Errc::kConfig, std::string("config needs ") + key);
    }

    RunConfig c;
    if (!j["version"].is_number_integer() || j["version"].get<int>() != 1) {
        throw Error(Errc::kConfig, "unsupported config version");
    }
    c.parties = uint_field(j, "parties");
    if (c.parties < 2) throw Error(Errc::kConfig, "parties must be at least 2");
    if (c.parties > 64) throw Error(Errc::kConfig, "parties must be at most 64");
    c.seed = string_field(j, "seed");
    if (c.seed.empty()) throw Error(Errc::kConfig, "seed must be non-empty");
    if (j.contains("group")) c.group = string_field(j, "group");
    if (j.contains("accumulator")) c.accumulator = string_field(j, "accumulator");
    if (j.contains("mode")) {
        auto mode = swap::parse_mode(string_field(j, "mode"));
        if (!mode) throw Error(Errc::kConfig, "mode must be 'accumulated' or 'direct'");
        c.mode = *mode;
    }
    if (j.contains("behaviors")) {
        const auto& b = j["behaviors"];
        if (b.is_array()) {
            if (b.size() != c.parties) throw Error(Errc::kConfig, "behaviors array needs one entry per party");
            for (std::size_t i = 0; i < b.size(); ++i) c.behaviors[i] = behavior_field(b[i]);
        } else if (b.is_object()) {
            for (const auto& [id, v] : b.items()) c.behaviors[party_index(id, c.parties)] = behavior_field(v);
        } else {
            throw Error(Errc::kConfig, "behaviors must be an object or an array");
        }
    }
    if (j.contains("expect")) {
        auto v = sim::parse_verdict(string_field(j, "expect"));
        if (!v) throw Error(Errc::kConfig, "expect must be all-completed, none-completed or violation");
        c.expect = *v;
    }
    if (j.contains("transcript")) c.transcript = string_field(j, "transcript");
    if (j.contains("base_expiry")) c.base_expiry = uint_field(j, "base_expiry");
    if (j.contains("claim_window")) c.claim_window = uint_field(j, "claim_window");
    if (j.contains("timing")) {
        if (!j["timing"].is_boolean()) throw Error(Errc::kConfig, "timing must be a boolean");
        c.timing = j["timing"].get<bool>();
    }
    return c;
}

std::string RunConfig::canonical() const {
    json j;
    j["version"] = version;
    j["group"] = group;
    j["accumulator"] = accumulator;
    j["parties"] = parties;
    j["mode"] = std::string(swap::mode_name(mode));
    j["seed"] = seed;
    json b = json::object();
    for (const auto& [pos, behavior] : behaviors) b["P" + std::to_string(pos + 1)] = behavior.name();
    j["behaviors"] = b;
    if (expect) j["expect"] = std::string(sim::verdict_name(*expect));
    j["base_expiry"] = base_expiry;
    j["claim_window"] = claim_window;
    return j.dump();
}

sim::ScenarioSpec RunConfig::to_spec(GroupProfile* resolved) const {
    auto group_profile = resolve_group(group);
    if (resolved != nullptr) *resolved = group_profile;
    sim::ScenarioSpec spec;
    spec.group = group_profile.group;
    spec.acc_params = resolve_accumulator(accumulator);
    spec.parties = parties;
    spec.mode = mode;
    spec.seed = to_bytes(seed);
    spec.base_expiry = base_expiry;
    spec.claim_window = claim_window;
    if (!behaviors.empty()) {
        spec.behaviors.assign(parties, sim::Behavior::honest());
        for (const auto& [pos, b] : behaviors) spec.behaviors[pos] = b;
    }
    spec.validate();
    return spec;
}

} // namespace mpswap::cli
