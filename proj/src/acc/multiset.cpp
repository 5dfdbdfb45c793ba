#include "mpswap/acc/multiset.hpp"

#include <algorithm>

#include "mpswap/error.hpp"

namespace mpswap::acc {

Multiset Multiset::of(const std::vector<Bytes>& elems) {
    Multiset m;
    for (const auto& e : elems) m.insert(e);
    return m;
}

void Multiset::insert(ByteView elem, std::uint64_t times) {
    if (times == 0) return;
    counts_[Bytes(elem.begin(), elem.end())] += times;
    size_ += times;
}

void Multiset::remove(ByteView elem, std::uint64_t times) {
    if (times == 0) return;
    auto it = counts_.find(Bytes(elem.begin(), elem.end()));
    if (it == counts_.end() || it->second < times) {
        throw Error(Errc::kNotMember, "element not present with sufficient multiplicity");
    }
    it->second -= times;
    size_ -= times;
    if (it->second == 0) counts_.erase(it);
}

std::uint64_t Multiset::count(ByteView elem) const {
    auto it = counts_.find(Bytes(elem.begin(), elem.end()));
    return it == counts_.end() ? 0 : it->second;
}

bool Multiset::includes(const Multiset& other) const {
    return std::all_of(other.begin(), other.end(),
                       [&](const auto& kv) { return count(kv.first) >= kv.second; });
}

Multiset Multiset::union_with(const Multiset& other) const {
    Multiset out = *this;
    for (const auto& [e, n] : other) out.insert(e, n);
    return out;
}

Multiset Multiset::difference(const Multiset& other) const {
    Multiset out = *this;
    for (const auto& [e, n] : other) out.remove(e, std::min(n, out.count(e)));
    return out;
}

} // namespace mpswap::acc
