#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mpswap {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView data);
/// Throws Error(kDecode) on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Big-endian, length-prefixed serialization used by every canonical encoding.
class ByteWriter {
  public:
    ByteWriter& u8(std::uint8_t v);
    ByteWriter& u32(std::uint32_t v);
    ByteWriter& u64(std::uint64_t v);
    ByteWriter& raw(ByteView data);
    /// u32 length followed by the bytes.
    ByteWriter& var(ByteView data);
    ByteWriter& str(std::string_view s) { return var(as_bytes(s)); }

    const Bytes& bytes() const& { return buf_; }
    Bytes take() && { return std::move(buf_); }

  private:
    Bytes buf_;
};

class ByteReader {
  public:
    explicit ByteReader(ByteView data) : data_(data) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    ByteView raw(std::size_t n);
    ByteView var();
    std::string str();

    bool done() const { return pos_ == data_.size(); }
    /// Throws unless every byte was consumed.
    void expect_done() const;

  private:
    ByteView data_;
    std::size_t pos_ = 0;
};

} // namespace mpswap
