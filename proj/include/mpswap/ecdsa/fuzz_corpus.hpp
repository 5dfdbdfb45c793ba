#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mpswap/bytes.hpp"

namespace mpswap::ecdsa {

/// One mutated (σ, σ̂) tuple. On disk: `<label> <hex σ> <hex σ̂>` per line.
struct FuzzCase {
    std::string label;
    Bytes signature;
    Bytes presignature;

    friend bool operator==(const FuzzCase&, const FuzzCase&) = default;
};

void write_corpus(std::ostream& out, const std::vector<FuzzCase>& cases);
/// Throws Error(kDecode) on a malformed line.
std::vector<FuzzCase> read_corpus(std::istream& in);

} // namespace mpswap::ecdsa
