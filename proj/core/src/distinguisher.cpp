#include "kleq/distinguisher.hpp"

#include <array>
#include <string>
#include <utility>

#include "kleq/errors.hpp"

namespace kleq {

namespace {

constexpr std::array<std::pair<DistinguisherKind, std::string_view>, 4> kNames{{
    {DistinguisherKind::XorDifference, "xor-difference"},
    {DistinguisherKind::Reflection, "reflection"},
    {DistinguisherKind::MirrorPair, "mirror-pair"},
    {DistinguisherKind::Pointwise, "pointwise"},
}};

}  // namespace

std::string_view distinguisher_name(DistinguisherKind k) noexcept {
  for (const auto& [kind, name] : kNames) {
    if (kind == k) {
      return name;
    }
  }
  return "?";
}

std::optional<DistinguisherKind> parse_distinguisher(std::string_view name) noexcept {
  for (const auto& [kind, n] : kNames) {
    if (n == name) {
      return kind;
    }
  }
  return std::nullopt;
}

Word Distinguisher::combine(const BlockPair& p) const noexcept {
  return kind_ == DistinguisherKind::Reflection ? p.b ^ lin_.reflect(p.a) : p.a ^ p.b;
}

std::optional<Word> Distinguisher::constant(std::span<const BlockPair> s) const {
  if (s.empty() || (kind_ != DistinguisherKind::XorDifference && kind_ != DistinguisherKind::Reflection)) {
    return std::nullopt;
  }
  const Word c = combine(s[0]);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (combine(s[i]) != c) {
      return std::nullopt;
    }
  }
  return c;
}

bool Distinguisher::decide(std::span<const BlockPair> s) const {
  if (s.size() < 2) {
    throw ParameterError("a distinguisher needs at least 2 pairs, got " + std::to_string(s.size()));
  }
  switch (kind_) {
    case DistinguisherKind::XorDifference:
    case DistinguisherKind::Reflection:
      return constant(s).has_value();
    case DistinguisherKind::MirrorPair:
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          if (s[i].a == s[j].b && s[j].a == s[i].b) {
            return true;
          }
        }
      }
      return false;
    case DistinguisherKind::Pointwise:
      for (const auto& p : s) {
        const Word a = twist_ ? (*twist_)[p.a] : p.a;
        if (a != p.b) {
          return false;
        }
      }
      return true;
  }
  return false;
}

std::uint64_t Distinguisher::cost_T(std::uint64_t t) const noexcept {
  switch (kind_) {
    case DistinguisherKind::XorDifference:
    case DistinguisherKind::Reflection:
      return t > 0 ? t - 1 : 0;
    case DistinguisherKind::MirrorPair:
      return t * t;
    case DistinguisherKind::Pointwise:
      return t;
  }
  return 0;
}

Distinguisher xor_difference_distinguisher(unsigned n) { return {DistinguisherKind::XorDifference, n}; }

Distinguisher reflection_distinguisher(unsigned n) { return {DistinguisherKind::Reflection, n}; }

Distinguisher mirror_pair_distinguisher(unsigned n) { return {DistinguisherKind::MirrorPair, n}; }

Distinguisher pointwise_distinguisher(unsigned n, std::shared_ptr<const std::vector<Word>> twist) {
  if (twist && twist->size() != (std::size_t{1} << n)) {
    throw ParameterError("public permutation size does not match n");
  }
  return {DistinguisherKind::Pointwise, n, std::move(twist)};
}

}  // namespace kleq
