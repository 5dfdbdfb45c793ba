#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mpswap/bytes.hpp"

namespace mpswap::acc {

// Multiset over byte strings. Union adds multiplicities; difference subtracts
// them, dropping elements whose multiplicity reaches zero.
class Multiset {
  public:
    using Map = std::map<Bytes, std::uint64_t>;

    Multiset() = default;
    static Multiset of(const std::vector<Bytes>& elems);

    void insert(ByteView elem, std::uint64_t times = 1);
    /// Throws Error(kNotMember) if the multiplicity is insufficient.
    void remove(ByteView elem, std::uint64_t times = 1);

    std::uint64_t count(ByteView elem) const;
    bool contains(ByteView elem) const { return count(elem) > 0; }
    /// Total number of copies.
    std::uint64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    /// True iff every element of `other` is present here with at least its multiplicity.
    bool includes(const Multiset& other) const;

    Multiset union_with(const Multiset& other) const;
    /// Truncating difference: multiplicity max(0, a - b).
    Multiset difference(const Multiset& other) const;

    const Map& entries() const { return counts_; }
    Map::const_iterator begin() const { return counts_.begin(); }
    Map::const_iterator end() const { return counts_.end(); }

    friend bool operator==(const Multiset& a, const Multiset& b) { return a.counts_ == b.counts_; }

  private:
    Map counts_;
    std::uint64_t size_ = 0;
};

} // namespace mpswap::acc
