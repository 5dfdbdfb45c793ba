#include "mpswap/acc/manager.hpp"

#include <ostream>
#include <sstream>

#include "mpswap/error.hpp"

namespace mpswap::acc {

namespace {

std::string format_elem(ByteView e) { return "hex:" + to_hex(e); }

Bytes parse_elem(std::string_view token) {
    if (token.empty()) throw Error(Errc::kDecode, "empty element token");
    if (token.starts_with("hex:")) return from_hex(token.substr(4));
    return to_bytes(token);
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace

std::string AccOp::format() const {
    std::ostringstream out;
    switch (kind) {
    case Kind::kInsert: out << "insert"; break;
    case Kind::kRemove: out << "remove"; break;
    case Kind::kBatchInsert: out << "batch-insert"; break;
    case Kind::kBatchRemove: out << "batch-remove"; break;
    case Kind::kMultiSwap: out << "multiswap"; break;
    }
    for (const auto& e : elems) out << ' ' << format_elem(e);
    for (const auto& [x, y] : swaps) out << ' ' << format_elem(x) << ':' << format_elem(y);
    return out.str();
}

std::optional<AccOp> parse_acc_op(std::string_view line) {
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].starts_with("#")) return std::nullopt;
    AccOp op{};
    const auto cmd = tokens[0];
    const std::size_t args = tokens.size() - 1;
    if (cmd == "insert" || cmd == "remove") {
        if (args != 1) throw Error(Errc::kDecode, std::string(cmd) + " takes exactly one element");
        op.kind = cmd == "insert" ? AccOp::Kind::kInsert : AccOp::Kind::kRemove;
    } else if (cmd == "batch-insert") {
        op.kind = AccOp::Kind::kBatchInsert;
    } else if (cmd == "batch-remove") {
        op.kind = AccOp::Kind::kBatchRemove;
    } else if (cmd == "multiswap") {
        op.kind = AccOp::Kind::kMultiSwap;
    } else {
        throw Error(Errc::kDecode, "unknown accumulator op '" + std::string(cmd) + "'");
    }
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (op.kind == AccOp::Kind::kMultiSwap) {
            // hex: tokens contain a colon themselves; split on the colon that
            // separates the pair.
            auto tok = tokens[i];
            std::size_t from = tok.starts_with("hex:") ? 4 : 0;
            auto sep = tok.find(':', from);
            if (sep == std::string_view::npos) throw Error(Errc::kDecode, "multiswap pair needs x:y");
            op.swaps.emplace_back(parse_elem(tok.substr(0, sep)), parse_elem(tok.substr(sep + 1)));
        } else {
            op.elems.push_back(parse_elem(tokens[i]));
        }
    }
    return op;
}

AccumulatorManager::AccumulatorManager(RsaParams params)
    : params_(std::move(params)), digest_(empty_digest(params_)) {}

AccOpResult AccumulatorManager::apply(const AccOp& op) {
    AccOpResult result{digest_, digest_, std::nullopt, std::nullopt};
    switch (op.kind) {
    case AccOp::Kind::kInsert:
        for (const auto& e : op.elems) {
            digest_ = acc::insert(params_, digest_, e);
            set_.insert(e);
        }
        break;
    case AccOp::Kind::kRemove:
        for (const auto& e : op.elems) {
            Multiset next = set_;
            next.remove(e);
            set_ = std::move(next);
            digest_ = acc::digest(params_, set_);
        }
        break;
    case AccOp::Kind::kBatchInsert: {
        auto upd = batch_insert_prove(params_, digest_, op.elems);
        for (const auto& e : op.elems) set_.insert(e);
        digest_ = upd.digest;
        result.proof = upd.proof;
        break;
    }
    case AccOp::Kind::kBatchRemove: {
        auto upd = batch_remove_prove(params_, set_, op.elems);
        for (const auto& e : op.elems) set_.remove(e);
        digest_ = upd.digest;
        result.proof = upd.proof;
        break;
    }
    case AccOp::Kind::kMultiSwap: {
        auto res = multiswap(params_, set_, op.swaps);
        set_ = std::move(res.updated);
        digest_ = res.digest;
        result.swap_proof = std::move(res.proof);
        break;
    }
    }
    result.after = digest_;
    log_.push_back(op.format());
    return result;
}

AccOpResult AccumulatorManager::insert(ByteView elem) {
    return apply(AccOp{AccOp::Kind::kInsert, {Bytes(elem.begin(), elem.end())}, {}});
}

AccOpResult AccumulatorManager::remove(ByteView elem) {
    return apply(AccOp{AccOp::Kind::kRemove, {Bytes(elem.begin(), elem.end())}, {}});
}

AccumulatorManager AccumulatorManager::replay(RsaParams params, const std::vector<std::string>& lines) {
    AccumulatorManager m(std::move(params));
    for (const auto& line : lines) {
        if (auto op = parse_acc_op(line)) m.apply(*op);
    }
    return m;
}

void AccumulatorManager::write_log(std::ostream& out) const {
    for (const auto& line : log_) out << line << '\n';
}

} // namespace mpswap::acc
