#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kleq/construction.hpp"
#include "kleq/mitm.hpp"

namespace kleq {

// Exhaustive reference oracles. Slow on purpose and independent of the
// attack code: they only use the construction and the (f, g) definitions.

inline constexpr unsigned kMaxBruteForceBits = 24;
inline constexpr unsigned kMaxClawSideBits = 12;

/// Every key tuple under which the instance's public algorithm maps each
/// data plaintext to its ciphertext. Throws ResourceError when the key tuple
/// is wider than `max_bits`.
std::vector<KeyTuple> brute_force_keys(const ConstructionInstance& inst, std::span<const PlainCipherPair> data,
                                       unsigned max_bits = kMaxBruteForceBits);

/// All (x, y) with f(x) == g(y), sorted. Throws ResourceError when either
/// side is wider than `max_side_bits`.
std::vector<std::pair<std::uint64_t, std::uint64_t>> enumerate_claws(const MitmFunctionPair& pair,
                                                                     unsigned max_side_bits = kMaxClawSideBits);

struct MirrorPairScan {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // ordered (i, j), i != j
  std::size_t violations = 0;  // pairs for which the implied relation fails
};

/// For a 3xce / 3xce-tilde instance with known keys: every ordered index pair
/// (i, j), i != j, with E1_k(m_i ^ k1) = D2_k(c_j ^ k1) where c_j = Enc(m_j),
/// and how many of them violate D2_k(c_i ^ k1) = E1_k(m_j ^ k1) (with P
/// applied to the left side when the middle layer is P-twisted).
MirrorPairScan enumerate_mirror_pairs(const ConstructionInstance& inst, std::span<const Word> plaintexts);

}  // namespace kleq
