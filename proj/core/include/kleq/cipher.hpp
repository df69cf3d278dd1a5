#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "kleq/errors.hpp"

namespace kleq {

using Word = std::uint32_t;

inline constexpr unsigned kMinWidth = 3;
inline constexpr unsigned kMaxWidth = 24;

constexpr Word low_mask(unsigned bits) noexcept {
  return bits >= 32 ? ~Word{0} : static_cast<Word>((std::uint64_t{1} << bits) - 1);
}

/// An unsigned value tagged with its bit width; value < 2^width always holds.
template <class Tag>
class BitString {
 public:
  BitString(Word value, unsigned width) : value_(value), width_(width) {
    if (width == 0 || width > 32 || (value & ~low_mask(width)) != 0) {
      throw ParameterError("value does not fit in declared width");
    }
  }
  Word value() const noexcept { return value_; }
  unsigned width() const noexcept { return width_; }
  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  Word value_;
  unsigned width_;
};

using Block = BitString<struct BlockTag>;
using Key = BitString<struct KeyTag>;

/// Key length kappa, block length n, and the seed that makes this cipher
/// independent of others with the same widths.
class CipherParams {
 public:
  CipherParams(unsigned kappa, unsigned n, std::uint64_t cipher_id);

  unsigned kappa() const noexcept { return kappa_; }
  unsigned n() const noexcept { return n_; }
  std::uint64_t cipher_id() const noexcept { return cipher_id_; }
  friend bool operator==(const CipherParams&, const CipherParams&) = default;

 private:
  unsigned kappa_;
  unsigned n_;
  std::uint64_t cipher_id_;
};

/// Seeded toy block cipher: an unbalanced Feistel network over halves of
/// ceil(n/2) and floor(n/2) bits whose round function is fmix64 applied to a
/// round key derived from (cipher_id, key, round) xored with the half-block.
/// Every key gives a permutation of {0,1}^n by construction.
class ToyCipher {
 public:
  static constexpr unsigned kRounds = 10;

  /// Expanded round keys for one cipher key; reuse across many blocks.
  struct Schedule {
    std::array<std::uint64_t, kRounds> round_keys{};
  };

  explicit ToyCipher(CipherParams params);

  const CipherParams& params() const noexcept { return params_; }
  unsigned kappa() const noexcept { return params_.kappa(); }
  unsigned n() const noexcept { return params_.n(); }

  Schedule schedule(Word key) const noexcept;

  // Unchecked hot path: inputs are masked to their widths.
  Word encrypt(const Schedule& ks, Word block) const noexcept;
  Word decrypt(const Schedule& ks, Word block) const noexcept;
  Word encrypt(Word key, Word block) const noexcept { return encrypt(schedule(key), block); }
  Word decrypt(Word key, Word block) const noexcept { return decrypt(schedule(key), block); }

  // Width-checked API; throws ParameterError on mismatch.
  Block encrypt(const Key& key, const Block& block) const;
  Block decrypt(const Key& key, const Block& block) const;

 private:
  void check_widths(const Key& key, const Block& block) const;

  CipherParams params_;
  std::uint64_t id_mix_;
  unsigned hi_bits_;
  unsigned lo_bits_;
};

}  // namespace kleq
