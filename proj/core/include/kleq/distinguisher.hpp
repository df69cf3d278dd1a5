#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kleq/cipher.hpp"
#include "kleq/linear.hpp"

namespace kleq {

/// One intermediate-state pair (a_i, b_i) around the keyed middle layer.
struct BlockPair {
  Word a = 0;
  Word b = 0;
  friend bool operator==(const BlockPair&, const BlockPair&) = default;
};

using PairSet = std::vector<BlockPair>;

enum class DistinguisherKind {
  XorDifference,  // a_i ^ b_i constant
  Reflection,     // b_i ^ R(a_i) constant
  MirrorPair,     // some i != j with a_i = b_j and a_j = b_i
  Pointwise,      // a_i = b_i for all i, or P(a_i) = b_i with a public P
};

std::string_view distinguisher_name(DistinguisherKind k) noexcept;
std::optional<DistinguisherKind> parse_distinguisher(std::string_view name) noexcept;

/// Key-independent test on a pair set: decide() only sees S.
class Distinguisher {
 public:
  DistinguisherKind kind() const noexcept { return kind_; }
  unsigned n() const noexcept { return n_; }
  bool twisted() const noexcept { return twist_ != nullptr; }

  /// Throws ParameterError when |S| < 2.
  bool decide(std::span<const BlockPair> s) const;

  /// The constant the xor-difference / reflection tests look for, when it
  /// exists over all of S.
  std::optional<Word> constant(std::span<const BlockPair> s) const;

  /// Declared elementary checks per call for |S| = t.
  std::uint64_t cost_T(std::uint64_t t) const noexcept;

  friend Distinguisher xor_difference_distinguisher(unsigned n);
  friend Distinguisher reflection_distinguisher(unsigned n);
  friend Distinguisher mirror_pair_distinguisher(unsigned n);
  friend Distinguisher pointwise_distinguisher(unsigned n, std::shared_ptr<const std::vector<Word>> twist);

 private:
  Distinguisher(DistinguisherKind kind, unsigned n, std::shared_ptr<const std::vector<Word>> twist = nullptr)
      : kind_(kind), n_(n), lin_(n), twist_(std::move(twist)) {}

  Word combine(const BlockPair& p) const noexcept;

  DistinguisherKind kind_;
  unsigned n_;
  LinearOps lin_;
  std::shared_ptr<const std::vector<Word>> twist_;
};

Distinguisher xor_difference_distinguisher(unsigned n);
Distinguisher reflection_distinguisher(unsigned n);
Distinguisher mirror_pair_distinguisher(unsigned n);
Distinguisher pointwise_distinguisher(unsigned n, std::shared_ptr<const std::vector<Word>> twist = nullptr);

}  // namespace kleq
