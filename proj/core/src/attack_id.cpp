#include "kleq/attack_id.hpp"

#include <utility>

namespace kleq {

namespace {

constexpr std::array<std::pair<AttackId, std::string_view>, 14> kAttackNames{{
    {AttackId::QcfMitm2kte, "qcf-mitm-2kte"},
    {AttackId::GroverMitm2kte, "grover-mitm-2kte"},
    {AttackId::TradeoffMitm2kte, "tradeoff-mitm-2kte"},
    {AttackId::QcfMitmG2kte, "qcf-mitm-g2kte"},
    {AttackId::GroverMitmG2kte, "grover-mitm-g2kte"},
    {AttackId::Q2Qcf3xce, "3xce-q2-qcf"},
    {AttackId::Q2Grover3xce, "3xce-q2-grover"},
    {AttackId::Q2Tradeoff3xce, "3xce-q2-tradeoff"},
    {AttackId::Q1Mitm3xce, "3xce-q1-mitm"},
    {AttackId::Sitm3xce, "sitm-3xce"},
    {AttackId::SitmKarc, "sitm-karc"},
    {AttackId::MirrorSlideQ1, "mirror-slide-q1"},
    {AttackId::MirrorSlideQ2, "mirror-slide-q2"},
    {AttackId::MirrorSlideQ2P, "mirror-slide-q2-p"},
}};

}  // namespace

std::string_view attack_name(AttackId id) noexcept {
  for (const auto& [a, name] : kAttackNames) {
    if (a == id) {
      return name;
    }
  }
  return "?";
}

std::optional<AttackId> parse_attack(std::string_view name) noexcept {
  for (const auto& [a, n] : kAttackNames) {
    if (n == name) {
      return a;
    }
  }
  return std::nullopt;
}

}  // namespace kleq
