#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kleq/cipher.hpp"
#include "kleq/linear.hpp"

namespace kleq {

enum class Scheme {
  TwoKeyTriple,             // E_k1 . E_k2 . E_k1
  TwoKeyTripleEde,          // E_k1 . D_k2 . E_k1
  GeneralizedTwoKeyTriple,  // E3_k1 . E2_k2 . E1_k1
  ThreeXorCascade,          // E2_k(E1_k(m ^ k1) ^ k2) ^ k1
  TildeThreeXorCascade,     // E2_k(L_k2(E1_k(m ^ k1))) ^ k1
  Karc,                     // D_{k^alpha}(R(E_k(m ^ k1) ^ k2) ^ sigma(k2)) ^ sigma(k1)
  GenericEle,               // E2_k . L_k2 . E1_k
};

std::string_view scheme_name(Scheme s) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

enum class MiddleKind { Xor, ReflectionAffine, RandomInvolution, PTwistedInvolution };

std::string_view middle_kind_name(MiddleKind k) noexcept;
std::optional<MiddleKind> parse_middle_kind(std::string_view name) noexcept;

/// KARC constant alpha: the kappa-bit truncation of 0x5A5A5A5A.
Word karc_alpha(unsigned kappa) noexcept;

/// Public fixed-point-free involution P on {0,1}^n, seeded only by public data.
std::vector<Word> public_twist_permutation(unsigned n, std::uint64_t public_seed);

/// Keyed middle permutation L_k2 of an ELE-style construction.
///   xor                   L(x) = x ^ k2
///   reflection_affine     L(x) = R(x ^ k2) ^ sigma(k2)
///   random_involution     seeded random pairing of {0,1}^n, L.L = Id
///   p_twisted_involution  L = P . K with K.K = P, so L.P.L = Id
class MiddleLayer {
 public:
  MiddleLayer(MiddleKind kind, unsigned n, Word k2, std::uint64_t public_seed);

  MiddleKind kind() const noexcept { return kind_; }
  unsigned n() const noexcept { return n_; }
  Word key() const noexcept { return k2_; }

  Word apply(Word x) const noexcept;
  Word invert(Word y) const noexcept;

  /// The public P for the p-twisted kind; empty otherwise.
  std::shared_ptr<const std::vector<Word>> twist() const noexcept { return twist_; }

 private:
  MiddleKind kind_;
  unsigned n_;
  Word k2_;
  LinearOps lin_;
  std::shared_ptr<const std::vector<Word>> forward_;
  std::shared_ptr<const std::vector<Word>> inverse_;
  std::shared_ptr<const std::vector<Word>> twist_;
};

/// Builds L_k2 for the given kind; k2 must be n bits wide.
MiddleLayer middle_layer(MiddleKind kind, const Key& k2, std::uint64_t public_seed);

/// Everything about a construction that is public: scheme, widths, which
/// ciphers, middle-layer kind.
struct SchemeConfig {
  Scheme scheme = Scheme::TwoKeyTriple;
  unsigned kappa = 8;
  unsigned n = 8;
  std::uint64_t cipher_base_id = 1;
  bool share_ciphers = false;  // 3XCE-family: E1 == E2
  MiddleKind middle = MiddleKind::Xor;  // tilde-3XCE and generic ELE only
  std::uint64_t public_seed = 0x5eed;
};

/// The middle layer the scheme actually uses: xor for 3XCE, reflection-affine
/// for KARC, the configured kind for tilde-3XCE and ELE, none for 2kTE.
std::optional<MiddleKind> effective_middle(const SchemeConfig& cfg);

struct KeySlot {
  std::string name;
  unsigned width;
};

/// Names and widths of the secret key tuple, e.g. {k1:kappa, k2:kappa} for
/// 2kTE or {k:kappa, k1:n, k2:n} for 3XCE.
std::vector<KeySlot> key_layout(const SchemeConfig& cfg);

struct KeyTuple {
  std::vector<Word> parts;
  friend bool operator==(const KeyTuple&, const KeyTuple&) = default;
};

class ThreeXorRewrite;

/// A keyed instance of one construction. Immutable after construction.
class ConstructionInstance {
 public:
  ConstructionInstance(SchemeConfig cfg, KeyTuple keys);

  /// Uniformly random key tuple drawn from `seed`.
  static ConstructionInstance random(const SchemeConfig& cfg, std::uint64_t seed);

  Word encrypt(Word m) const noexcept;
  Word decrypt(Word c) const noexcept;
  Block encrypt(const Block& m) const;
  Block decrypt(const Block& c) const;

  const SchemeConfig& config() const noexcept { return cfg_; }
  const KeyTuple& secret_keys() const noexcept { return keys_; }
  unsigned n() const noexcept { return cfg_.n; }
  unsigned kappa() const noexcept { return cfg_.kappa; }

  /// Underlying cipher E^i, i in {1, 2, 3}. Schemes with fewer independent
  /// ciphers return the same object for several indices.
  const ToyCipher& cipher(int i) const { return ciphers_.at(static_cast<std::size_t>(i - 1)); }

  const MiddleLayer* middle() const noexcept { return middle_ ? &*middle_ : nullptr; }

  /// Same public configuration, different keys.
  ConstructionInstance with_keys(KeyTuple keys) const { return {cfg_, std::move(keys)}; }

  /// Splits a 3XCE instance into three keyed maps whose composition equals
  /// encrypt(). Throws ParameterError for any other scheme.
  ThreeXorRewrite rewrite_3xce_as_g2kte() const;

 private:
  SchemeConfig cfg_;
  KeyTuple keys_;
  std::array<ToyCipher, 3> ciphers_;
  std::array<ToyCipher::Schedule, 3> ks_;
  std::optional<MiddleLayer> middle_;
  LinearOps lin_;
};

/// Keyed maps for 3XCE = E3~ . E2~ . E1~ with
///   E1~(x) = E1_k(x ^ k1),  E2~(x) = x ^ k2,  E3~(x) = E2_k(x) ^ k1.
class ThreeXorRewrite {
 public:
  ThreeXorRewrite(const ToyCipher& e1, const ToyCipher& e2, Word k, Word k1, Word k2);

  Word outer_first(Word x) const noexcept;
  Word outer_first_inverse(Word y) const noexcept;
  Word whitening(Word x) const noexcept { return x ^ k2_; }
  Word whitening_inverse(Word y) const noexcept { return y ^ k2_; }
  Word outer_last(Word x) const noexcept;
  Word outer_last_inverse(Word y) const noexcept;

  Word compose(Word m) const noexcept { return outer_last(whitening(outer_first(m))); }

 private:
  ToyCipher e1_;
  ToyCipher e2_;
  ToyCipher::Schedule ks1_;
  ToyCipher::Schedule ks2_;
  Word k1_;
  Word k2_;
};

}  // namespace kleq
