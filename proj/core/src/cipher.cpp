#include "kleq/cipher.hpp"

#include <string>

#include "kleq/random.hpp"

namespace kleq {

CipherParams::CipherParams(unsigned kappa, unsigned n, std::uint64_t cipher_id)
    : kappa_(kappa), n_(n), cipher_id_(cipher_id) {
  if (kappa < kMinWidth || kappa > kMaxWidth) {
    throw ParameterError("kappa=" + std::to_string(kappa) + " outside [3, 24]");
  }
  if (n < kMinWidth || n > kMaxWidth) {
    throw ParameterError("n=" + std::to_string(n) + " outside [3, 24]");
  }
}

ToyCipher::ToyCipher(CipherParams params)
    : params_(params),
      id_mix_(fmix64(params.cipher_id() ^ 0x243f6a8885a308d3ULL)),
      hi_bits_((params.n() + 1) / 2),
      lo_bits_(params.n() / 2) {}

ToyCipher::Schedule ToyCipher::schedule(Word key) const noexcept {
  Schedule ks;
  const std::uint64_t key_mix = fmix64(id_mix_ ^ (std::uint64_t{key & low_mask(kappa())} * 0x9e3779b97f4a7c15ULL));
  for (unsigned r = 0; r < kRounds; ++r) {
    ks.round_keys[r] = fmix64(key_mix + (std::uint64_t{r} + 1) * 0xd6e8feb86659fd93ULL);
  }
  return ks;
}

// State is (left, right) with widths (wl, wr). A round maps
// (L, R) -> (R, L ^ F(R)), so the widths swap every round; kRounds is even,
// so the final widths equal the initial ones.
Word ToyCipher::encrypt(const Schedule& ks, Word block) const noexcept {
  unsigned wl = hi_bits_;
  unsigned wr = lo_bits_;
  Word left = (block & low_mask(n())) >> wr;
  Word right = block & low_mask(wr);
  for (unsigned r = 0; r < kRounds; ++r) {
    const auto f = static_cast<Word>(fmix64(ks.round_keys[r] ^ right)) & low_mask(wl);
    const Word next_right = left ^ f;
    left = right;
    right = next_right;
    std::swap(wl, wr);
  }
  return (left << wr) | right;
}

Word ToyCipher::decrypt(const Schedule& ks, Word block) const noexcept {
  unsigned wl = hi_bits_;
  unsigned wr = lo_bits_;
  Word left = (block & low_mask(n())) >> wr;
  Word right = block & low_mask(wr);
  for (unsigned r = kRounds; r-- > 0;) {
    // (left, right) = (R_prev, L_prev ^ F(R_prev)) with widths (wl, wr).
    const auto f = static_cast<Word>(fmix64(ks.round_keys[r] ^ left)) & low_mask(wr);
    const Word prev_left = right ^ f;
    right = left;
    left = prev_left;
    std::swap(wl, wr);
  }
  return (left << wr) | right;
}

void ToyCipher::check_widths(const Key& key, const Block& block) const {
  if (key.width() != kappa()) {
    throw ParameterError("key width " + std::to_string(key.width()) + " != kappa " + std::to_string(kappa()));
  }
  if (block.width() != n()) {
    throw ParameterError("block width " + std::to_string(block.width()) + " != n " + std::to_string(n()));
  }
}

Block ToyCipher::encrypt(const Key& key, const Block& block) const {
  check_widths(key, block);
  return Block(encrypt(schedule(key.value()), block.value()), n());
}

Block ToyCipher::decrypt(const Key& key, const Block& block) const {
  check_widths(key, block);
  return Block(decrypt(schedule(key.value()), block.value()), n());
}

}  // namespace kleq
