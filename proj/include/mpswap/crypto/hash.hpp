#pragma once

#include <array>
#include <initializer_list>
#include <string_view>
#include <vector>

#include "mpswap/bytes.hpp"

namespace mpswap {

using Sha256Digest = std::array<std::uint8_t, 32>;
using Sha512Digest = std::array<std::uint8_t, 64>;

Sha256Digest sha256(ByteView data);
Sha512Digest sha512(ByteView data);

/// Domain-separated, length-prefixed framing: u32 len(tag) || tag || u32 count ||
/// for each part: u32 len || part. Two part lists hash alike only if they are
/// identical, regardless of where the boundaries fall.
Bytes frame_parts(std::string_view domain_tag, const std::vector<ByteView>& parts);

Sha256Digest tagged_sha256(std::string_view domain_tag, const std::vector<ByteView>& parts);

} // namespace mpswap
