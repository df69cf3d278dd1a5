#include "kleq/predict.hpp"

#include <string>

#include "kleq/claw.hpp"
#include "kleq/errors.hpp"

namespace kleq {

Rational default_log2_partitions(AttackId id, unsigned kappa, unsigned n) {
  const auto k = static_cast<std::int64_t>(kappa);
  const auto b = static_cast<std::int64_t>(n);
  switch (id) {
    case AttackId::TradeoffMitm2kte:
      return {k, 4};
    case AttackId::Q2Tradeoff3xce:
      return {b - k, 4};
    default:
      return 0;
  }
}

Prediction ledger_predict(AttackId id, unsigned kappa, unsigned n, std::optional<Rational> log2_r) {
  const Rational k(kappa);
  const Rational b(n);
  const Rational lr = log2_r.value_or(default_log2_partitions(id, kappa, n));
  const Rational brute_2kte = k;                      // 2 kappa key bits, square-rooted
  const Rational brute_3xce = (k + b + b) / 2;        // kappa + 2n key bits
  Prediction p;
  switch (id) {
    case AttackId::QcfMitm2kte:
    case AttackId::QcfMitmG2kte: {
      const auto c = claw_cost(kappa, kappa);
      p = {c.time_exponent, c.qram_exponent, brute_2kte};
      break;
    }
    case AttackId::GroverMitm2kte:
    case AttackId::GroverMitmG2kte:
    case AttackId::TradeoffMitm2kte:
      p = {k / 2 + lr, k - lr, brute_2kte};
      break;
    case AttackId::Q2Qcf3xce: {
      const auto c = claw_cost(kappa + n, n);
      p = {c.time_exponent, c.qram_exponent, brute_3xce};
      break;
    }
    case AttackId::Q2Grover3xce:
    case AttackId::Q2Tradeoff3xce:
      p = {(k + b) / 2 + lr, b - lr, brute_3xce};
      break;
    case AttackId::Q1Mitm3xce:
    case AttackId::Sitm3xce:
    case AttackId::SitmKarc:
    case AttackId::MirrorSlideQ2:
    case AttackId::MirrorSlideQ2P:
      p = {(k + b) / 2, std::nullopt, brute_3xce};
      break;
    case AttackId::MirrorSlideQ1:
      // t^2 pairwise checks with t ~ 2^((n+1)/2) add n to the exponent.
      p = {(k + b + b + b) / 2, std::nullopt, brute_3xce};
      break;
  }
  p.worse_than_bruteforce = p.time_exponent >= p.bruteforce_exponent;
  return p;
}

Prediction ledger_predict(std::string_view attack, unsigned kappa, unsigned n, std::optional<Rational> log2_r) {
  const auto id = parse_attack(attack);
  if (!id) {
    throw ParameterError("unknown attack id '" + std::string(attack) + "'");
  }
  return ledger_predict(*id, kappa, n, log2_r);
}

}  // namespace kleq
