#include "mpswap/cli/profiles.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>

#include <json.hpp>

#include "mpswap/error.hpp"

namespace mpswap::cli {

namespace {

using nlohmann::json;

json load_profile(std::string_view name, std::string_view suffix) {
    auto dir = profile_dir();
    if (!dir) throw Error(Errc::kConfig, "unknown profile '" + std::string(name) + "' (MPSWAP_PROFILE_DIR not set)");
    if (name.find('/') != std::string_view::npos || name.empty()) {
        throw Error(Errc::kConfig, "invalid profile name '" + std::string(name) + "'");
    }
    auto path = *dir / (std::string(name) + std::string(suffix));
    std::ifstream in(path);
    if (!in) throw Error(Errc::kConfig, "profile not found: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::kConfig, path.string() + ": " + e.what());
    }
}

mpz_class hex_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw Error(Errc::kConfig, std::string("profile needs hex field ") + key);
    mpz_class v;
    if (v.set_str(j[key].get<std::string>(), 16) != 0) throw Error(Errc::kConfig, std::string("bad hex in ") + key);
    return v;
}

unsigned uint_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw Error(Errc::kConfig, std::string("profile needs unsigned field ") + key);
    }
    return j[key].get<unsigned>();
}

const Group& schoolbook_cached(const mpz_class& p, const mpz_class& q, const mpz_class& g) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<Group>> cache;
    auto key = p.get_str(16) + ":" + q.get_str(16) + ":" + g.get_str(16);
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, Group::schoolbook(p, q, g, "schoolbook:" + key)).first;
    return *it->second;
}

} // namespace

std::optional<std::filesystem::path> profile_dir() {
    const char* dir = std::getenv("MPSWAP_PROFILE_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir);
}

GroupProfile resolve_group(std::string_view name) {
    if (name == "production" || name == "secp256k1") return {"secp256k1", &Group::secp256k1()};
    if (name == "tiny") return {"tiny", &Group::tiny()};
    auto j = load_profile(name, ".group.json");
    try {
        const auto& group = schoolbook_cached(hex_field(j, "p"), hex_field(j, "q"), hex_field(j, "g"));
        return {group.id(), &group};
    } catch (const Error& e) {
        if (e.code() == Errc::kConfig) throw;
        throw Error(Errc::kConfig, std::string("group profile rejected: ") + e.what());
    }
}

const Group& group_from_descriptor(std::string_view descriptor) {
    if (descriptor == "secp256k1") return Group::secp256k1();
    if (descriptor == "tiny") return Group::tiny();
    constexpr std::string_view prefix = "schoolbook:";
    if (descriptor.substr(0, prefix.size()) == prefix) {
        auto rest = std::string(descriptor.substr(prefix.size()));
        auto a = rest.find(':');
        auto b = a == std::string::npos ? a : rest.find(':', a + 1);
        if (b != std::string::npos) {
            mpz_class p, q, g;
            if (p.set_str(rest.substr(0, a), 16) == 0 && q.set_str(rest.substr(a + 1, b - a - 1), 16) == 0 &&
                g.set_str(rest.substr(b + 1), 16) == 0) {
                try {
                    return schoolbook_cached(p, q, g);
                } catch (const Error& e) {
                    throw Error(Errc::kDecode, std::string("invalid group parameters: ") + e.what());
                }
            }
        }
    }
    throw Error(Errc::kDecode, "unknown group descriptor " + std::string(descriptor));
}

acc::RsaParams resolve_accumulator(std::string_view name) {
    if (name == "toy") return acc::toy_params(as_bytes("mpswap/acc/toy/v1"));
    if (name == "realistic") return acc::realistic_params(as_bytes("mpswap/acc/realistic/v1"));
    auto j = load_profile(name, ".acc.json");
    if (!j.contains("seed") || !j["seed"].is_string()) throw Error(Errc::kConfig, "accumulator profile needs a seed");
    auto bits = uint_field(j, "modulus_bits");
    auto prime_bits = uint_field(j, "prime_bits");
    auto rounds = uint_field(j, "mr_rounds");
    try {
        return acc::setup(bits, as_bytes(j["seed"].get<std::string>()), prime_bits, rounds);
    } catch (const Error& e) {
        throw Error(Errc::kConfig, std::string("accumulator profile rejected: ") + e.what());
    }
}

} // namespace mpswap::cli
