#include "kleq/construction.hpp"

#include <string>
#include <utility>

#include "kleq/random.hpp"

namespace kleq {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 7> kSchemeNames{{
    {Scheme::TwoKeyTriple, "2kte"},
    {Scheme::TwoKeyTripleEde, "2kte-ede"},
    {Scheme::GeneralizedTwoKeyTriple, "g2kte"},
    {Scheme::ThreeXorCascade, "3xce"},
    {Scheme::TildeThreeXorCascade, "3xce-tilde"},
    {Scheme::Karc, "karc"},
    {Scheme::GenericEle, "ele"},
}};

constexpr std::array<std::pair<MiddleKind, std::string_view>, 4> kMiddleNames{{
    {MiddleKind::Xor, "xor"},
    {MiddleKind::ReflectionAffine, "reflection-affine"},
    {MiddleKind::RandomInvolution, "random-involution"},
    {MiddleKind::PTwistedInvolution, "p-twisted-involution"},
}};

bool is_two_key_triple(Scheme s) {
  return s == Scheme::TwoKeyTriple || s == Scheme::TwoKeyTripleEde || s == Scheme::GeneralizedTwoKeyTriple;
}

std::array<std::uint64_t, 3> cipher_ids(const SchemeConfig& cfg) {
  const auto id1 = derive_seed(cfg.cipher_base_id, 1);
  const auto id2 = derive_seed(cfg.cipher_base_id, 2);
  const auto id3 = derive_seed(cfg.cipher_base_id, 3);
  switch (cfg.scheme) {
    case Scheme::TwoKeyTriple:
    case Scheme::TwoKeyTripleEde:
    case Scheme::Karc:
      return {id1, id1, id1};
    case Scheme::GeneralizedTwoKeyTriple:
      return {id1, id2, id3};
    case Scheme::ThreeXorCascade:
    case Scheme::TildeThreeXorCascade:
    case Scheme::GenericEle:
      return {id1, cfg.share_ciphers ? id1 : id2, id3};
  }
  return {id1, id2, id3};
}

std::array<ToyCipher, 3> make_ciphers(const SchemeConfig& cfg) {
  const auto ids = cipher_ids(cfg);
  return {ToyCipher(CipherParams(cfg.kappa, cfg.n, ids[0])), ToyCipher(CipherParams(cfg.kappa, cfg.n, ids[1])),
          ToyCipher(CipherParams(cfg.kappa, cfg.n, ids[2]))};
}

}  // namespace

std::optional<MiddleKind> effective_middle(const SchemeConfig& cfg) {
  switch (cfg.scheme) {
    case Scheme::ThreeXorCascade:
      return MiddleKind::Xor;
    case Scheme::Karc:
      return MiddleKind::ReflectionAffine;
    case Scheme::TildeThreeXorCascade:
    case Scheme::GenericEle:
      return cfg.middle;
    default:
      return std::nullopt;
  }
}

namespace {

std::vector<Word> seeded_pairing(unsigned n, std::uint64_t seed) {
  std::vector<Word> order(std::size_t{1} << n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = static_cast<Word>(i);
  }
  Rng rng(seed);
  shuffle_in_place(order, rng);
  return order;
}

}  // namespace

std::string_view scheme_name(Scheme s) noexcept {
  for (const auto& [scheme, name] : kSchemeNames) {
    if (scheme == s) {
      return name;
    }
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
  for (const auto& [scheme, n] : kSchemeNames) {
    if (n == name) {
      return scheme;
    }
  }
  return std::nullopt;
}

std::string_view middle_kind_name(MiddleKind k) noexcept {
  for (const auto& [kind, name] : kMiddleNames) {
    if (kind == k) {
      return name;
    }
  }
  return "?";
}

std::optional<MiddleKind> parse_middle_kind(std::string_view name) noexcept {
  for (const auto& [kind, n] : kMiddleNames) {
    if (n == name) {
      return kind;
    }
  }
  return std::nullopt;
}

Word karc_alpha(unsigned kappa) noexcept { return 0x5A5A5A5AU & low_mask(kappa); }

std::vector<Word> public_twist_permutation(unsigned n, std::uint64_t public_seed) {
  const auto order = seeded_pairing(n, derive_seed(public_seed, 0x7157));
  std::vector<Word> p(order.size());
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    p[order[i]] = order[i + 1];
    p[order[i + 1]] = order[i];
  }
  return p;
}

MiddleLayer::MiddleLayer(MiddleKind kind, unsigned n, Word k2, std::uint64_t public_seed)
    : kind_(kind), n_(n), k2_(k2 & low_mask(n)), lin_(n) {
  const std::size_t size = std::size_t{1} << n;
  switch (kind) {
    case MiddleKind::Xor:
    case MiddleKind::ReflectionAffine:
      return;
    case MiddleKind::RandomInvolution: {
      // Fisher-Yates order, then consecutive elements are swapped pairs.
      const auto order = seeded_pairing(n, derive_seed(public_seed ^ 0x1a701u, k2_));
      auto table = std::make_shared<std::vector<Word>>(size);
      for (std::size_t i = 0; i + 1 < size; i += 2) {
        (*table)[order[i]] = order[i + 1];
        (*table)[order[i + 1]] = order[i];
      }
      forward_ = table;
      inverse_ = table;
      return;
    }
    case MiddleKind::PTwistedInvolution: {
      // P is a fixed-point-free involution made of 2^(n-1) transpositions.
      // Pairing transpositions (a b), (c d) into the 4-cycle a->c->b->d->a
      // gives K with K.K = P. K commutes with P, so L = P.K satisfies
      // L.P.L = P.K.P.P.K = P.K.K = P.P = Id.
      auto p = std::make_shared<std::vector<Word>>(public_twist_permutation(n, public_seed));
      const auto order = seeded_pairing(n, derive_seed(public_seed, 0x7157));
      const std::size_t cycles = size / 2;
      std::vector<std::size_t> cycle_order(cycles);
      for (std::size_t i = 0; i < cycles; ++i) {
        cycle_order[i] = i;
      }
      Rng rng(derive_seed(public_seed ^ 0x9c11u, k2_));
      shuffle_in_place(cycle_order, rng);
      std::vector<Word> k(size);
      for (std::size_t i = 0; i + 1 < cycles; i += 2) {
        const Word a = order[2 * cycle_order[i]];
        const Word b = order[2 * cycle_order[i] + 1];
        const Word c = order[2 * cycle_order[i + 1]];
        const Word d = order[2 * cycle_order[i + 1] + 1];
        k[a] = c;
        k[c] = b;
        k[b] = d;
        k[d] = a;
      }
      auto fwd = std::make_shared<std::vector<Word>>(size);
      auto inv = std::make_shared<std::vector<Word>>(size);
      for (std::size_t x = 0; x < size; ++x) {
        const Word y = (*p)[k[x]];
        (*fwd)[x] = y;
        (*inv)[y] = static_cast<Word>(x);
      }
      forward_ = fwd;
      inverse_ = inv;
      twist_ = p;
      return;
    }
  }
}

Word MiddleLayer::apply(Word x) const noexcept {
  switch (kind_) {
    case MiddleKind::Xor:
      return x ^ k2_;
    case MiddleKind::ReflectionAffine:
      return lin_.reflect(x ^ k2_) ^ lin_.sigma(k2_);
    default:
      return (*forward_)[x];
  }
}

Word MiddleLayer::invert(Word y) const noexcept {
  switch (kind_) {
    case MiddleKind::Xor:
      return y ^ k2_;
    case MiddleKind::ReflectionAffine:
      return lin_.reflect(y ^ lin_.sigma(k2_)) ^ k2_;
    default:
      return (*inverse_)[y];
  }
}

MiddleLayer middle_layer(MiddleKind kind, const Key& k2, std::uint64_t public_seed) {
  return {kind, k2.width(), k2.value(), public_seed};
}

std::vector<KeySlot> key_layout(const SchemeConfig& cfg) {
  if (is_two_key_triple(cfg.scheme)) {
    return {{"k1", cfg.kappa}, {"k2", cfg.kappa}};
  }
  if (cfg.scheme == Scheme::GenericEle) {
    return {{"k", cfg.kappa}, {"k2", cfg.n}};
  }
  return {{"k", cfg.kappa}, {"k1", cfg.n}, {"k2", cfg.n}};
}

ConstructionInstance::ConstructionInstance(SchemeConfig cfg, KeyTuple keys)
    : cfg_(cfg), keys_(std::move(keys)), ciphers_(make_ciphers(cfg)), lin_(cfg.n) {
  const auto layout = key_layout(cfg_);
  if (keys_.parts.size() != layout.size()) {
    throw ParameterError("scheme " + std::string(scheme_name(cfg_.scheme)) + " expects " +
                         std::to_string(layout.size()) + " keys");
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if ((keys_.parts[i] & ~low_mask(layout[i].width)) != 0) {
      throw ParameterError("key " + layout[i].name + " exceeds " + std::to_string(layout[i].width) + " bits");
    }
  }
  const auto& kp = keys_.parts;
  if (is_two_key_triple(cfg_.scheme)) {
    ks_ = {ciphers_[0].schedule(kp[0]), ciphers_[1].schedule(kp[1]), ciphers_[2].schedule(kp[0])};
  } else if (cfg_.scheme == Scheme::Karc) {
    ks_ = {ciphers_[0].schedule(kp[0]), ciphers_[0].schedule(kp[0] ^ karc_alpha(cfg_.kappa)), {}};
  } else {
    ks_ = {ciphers_[0].schedule(kp[0]), ciphers_[1].schedule(kp[0]), {}};
  }
  if (const auto kind = effective_middle(cfg_)) {
    middle_.emplace(*kind, cfg_.n, kp.back(), cfg_.public_seed);
  }
}

ConstructionInstance ConstructionInstance::random(const SchemeConfig& cfg, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x6b657973));
  KeyTuple keys;
  for (const auto& slot : key_layout(cfg)) {
    keys.parts.push_back(static_cast<Word>(rng() & low_mask(slot.width)));
  }
  return {cfg, std::move(keys)};
}

Word ConstructionInstance::encrypt(Word m) const noexcept {
  const auto& c = ciphers_;
  const auto& kp = keys_.parts;
  m &= low_mask(cfg_.n);
  switch (cfg_.scheme) {
    case Scheme::TwoKeyTriple:
    case Scheme::GeneralizedTwoKeyTriple:
      return c[2].encrypt(ks_[2], c[1].encrypt(ks_[1], c[0].encrypt(ks_[0], m)));
    case Scheme::TwoKeyTripleEde:
      return c[2].encrypt(ks_[2], c[1].decrypt(ks_[1], c[0].encrypt(ks_[0], m)));
    case Scheme::ThreeXorCascade:
    case Scheme::TildeThreeXorCascade:
      return c[1].encrypt(ks_[1], middle_->apply(c[0].encrypt(ks_[0], m ^ kp[1]))) ^ kp[1];
    case Scheme::GenericEle:
      return c[1].encrypt(ks_[1], middle_->apply(c[0].encrypt(ks_[0], m)));
    case Scheme::Karc:
      return c[0].decrypt(ks_[1], middle_->apply(c[0].encrypt(ks_[0], m ^ kp[1]))) ^ lin_.sigma(kp[1]);
  }
  return m;
}

Word ConstructionInstance::decrypt(Word ct) const noexcept {
  const auto& c = ciphers_;
  const auto& kp = keys_.parts;
  ct &= low_mask(cfg_.n);
  switch (cfg_.scheme) {
    case Scheme::TwoKeyTriple:
    case Scheme::GeneralizedTwoKeyTriple:
      return c[0].decrypt(ks_[0], c[1].decrypt(ks_[1], c[2].decrypt(ks_[2], ct)));
    case Scheme::TwoKeyTripleEde:
      return c[0].decrypt(ks_[0], c[1].encrypt(ks_[1], c[2].decrypt(ks_[2], ct)));
    case Scheme::ThreeXorCascade:
    case Scheme::TildeThreeXorCascade:
      return c[0].decrypt(ks_[0], middle_->invert(c[1].decrypt(ks_[1], ct ^ kp[1]))) ^ kp[1];
    case Scheme::GenericEle:
      return c[0].decrypt(ks_[0], middle_->invert(c[1].decrypt(ks_[1], ct)));
    case Scheme::Karc:
      return c[0].decrypt(ks_[0], middle_->invert(c[0].encrypt(ks_[1], ct ^ lin_.sigma(kp[1])))) ^ kp[1];
  }
  return ct;
}

Block ConstructionInstance::encrypt(const Block& m) const {
  if (m.width() != cfg_.n) {
    throw ParameterError("plaintext width " + std::to_string(m.width()) + " != n " + std::to_string(cfg_.n));
  }
  return Block(encrypt(m.value()), cfg_.n);
}

Block ConstructionInstance::decrypt(const Block& c) const {
  if (c.width() != cfg_.n) {
    throw ParameterError("ciphertext width " + std::to_string(c.width()) + " != n " + std::to_string(cfg_.n));
  }
  return Block(decrypt(c.value()), cfg_.n);
}

ThreeXorRewrite ConstructionInstance::rewrite_3xce_as_g2kte() const {
  if (cfg_.scheme != Scheme::ThreeXorCascade) {
    throw ParameterError("rewrite needs a 3xce instance, got " + std::string(scheme_name(cfg_.scheme)));
  }
  return {ciphers_[0], ciphers_[1], keys_.parts[0], keys_.parts[1], keys_.parts[2]};
}

ThreeXorRewrite::ThreeXorRewrite(const ToyCipher& e1, const ToyCipher& e2, Word k, Word k1, Word k2)
    : e1_(e1), e2_(e2), ks1_(e1.schedule(k)), ks2_(e2.schedule(k)), k1_(k1), k2_(k2) {}

Word ThreeXorRewrite::outer_first(Word x) const noexcept { return e1_.encrypt(ks1_, x ^ k1_); }
Word ThreeXorRewrite::outer_first_inverse(Word y) const noexcept { return e1_.decrypt(ks1_, y) ^ k1_; }
Word ThreeXorRewrite::outer_last(Word x) const noexcept { return e2_.encrypt(ks2_, x) ^ k1_; }
Word ThreeXorRewrite::outer_last_inverse(Word y) const noexcept { return e2_.decrypt(ks2_, y ^ k1_); }

}  // namespace kleq
