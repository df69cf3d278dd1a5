#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace kleq {

enum class AttackId {
  QcfMitm2kte,
  GroverMitm2kte,
  TradeoffMitm2kte,
  QcfMitmG2kte,
  GroverMitmG2kte,
  Q2Qcf3xce,
  Q2Grover3xce,
  Q2Tradeoff3xce,
  Q1Mitm3xce,
  Sitm3xce,
  SitmKarc,
  MirrorSlideQ1,
  MirrorSlideQ2,
  MirrorSlideQ2P,
};

inline constexpr std::array<AttackId, 14> kAllAttacks{
    AttackId::QcfMitm2kte,   AttackId::GroverMitm2kte, AttackId::TradeoffMitm2kte, AttackId::QcfMitmG2kte,
    AttackId::GroverMitmG2kte, AttackId::Q2Qcf3xce,    AttackId::Q2Grover3xce,     AttackId::Q2Tradeoff3xce,
    AttackId::Q1Mitm3xce,    AttackId::Sitm3xce,       AttackId::SitmKarc,         AttackId::MirrorSlideQ1,
    AttackId::MirrorSlideQ2, AttackId::MirrorSlideQ2P,
};

std::string_view attack_name(AttackId id) noexcept;
std::optional<AttackId> parse_attack(std::string_view name) noexcept;

}  // namespace kleq
