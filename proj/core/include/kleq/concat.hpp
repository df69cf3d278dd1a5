#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "kleq/cipher.hpp"

namespace kleq {

inline constexpr unsigned kMaxConcatBits = 128;

/// Concatenation B_1 || B_2 || ... || B_t of t n-bit blocks, held as one
/// integer with B_1 most significant, so integer order equals lexicographic
/// block order. At most kMaxConcatBits wide.
class ConcatValue {
 public:
  constexpr ConcatValue() = default;

  void append(Word block, unsigned width) noexcept {
    bits_ = (bits_ << width) | (block & low_mask(width));
    width_ += width;
  }

  unsigned width() const noexcept { return width_; }
  std::uint64_t high64() const noexcept { return static_cast<std::uint64_t>(bits_ >> 64); }
  std::uint64_t low64() const noexcept { return static_cast<std::uint64_t>(bits_); }

  /// Block i (0-based, from the most significant end) for block width n.
  Word block(unsigned i, unsigned n) const noexcept {
    const unsigned shift = width_ - (i + 1) * n;
    return static_cast<Word>(bits_ >> shift) & low_mask(n);
  }

  /// Little-endian bytes of the integer value.
  std::array<std::uint8_t, 16> le_bytes() const noexcept {
    std::array<std::uint8_t, 16> out{};
    for (unsigned i = 0; i < 16; ++i) {
      out[i] = static_cast<std::uint8_t>(bits_ >> (8 * i));
    }
    return out;
  }

  static ConcatValue from_le_bytes(const std::uint8_t* bytes, unsigned byte_count, unsigned width) noexcept {
    ConcatValue v;
    for (unsigned i = byte_count; i-- > 0;) {
      v.bits_ = (v.bits_ << 8) | bytes[i];
    }
    v.width_ = width;
    return v;
  }

  friend bool operator==(const ConcatValue&, const ConcatValue&) = default;
  friend std::strong_ordering operator<=>(const ConcatValue& a, const ConcatValue& b) noexcept {
    if (a.bits_ != b.bits_) {
      return a.bits_ < b.bits_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.width_ <=> b.width_;
  }

 private:
  __extension__ using U128 = unsigned __int128;
  U128 bits_ = 0;
  unsigned width_ = 0;
};

}  // namespace kleq
