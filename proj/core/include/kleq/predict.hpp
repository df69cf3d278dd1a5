#pragma once

#include <optional>
#include <string_view>

#include "kleq/attack_id.hpp"
#include "kleq/rational.hpp"

namespace kleq {

/// Asymptotic cost exponents (log2 scale) an attack is predicted to need.
struct Prediction {
  Rational time_exponent;
  std::optional<Rational> qram_exponent;  // empty: attack uses no QRAM
  Rational bruteforce_exponent;           // Grover search over the full key tuple
  bool worse_than_bruteforce = false;     // time_exponent >= bruteforce_exponent

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Default log2(r) when the caller gives none: 0 for unpartitioned attacks,
/// kappa/4 for the 2kTE tradeoff, (n - kappa)/4 for the 3XCE tradeoff.
Rational default_log2_partitions(AttackId id, unsigned kappa, unsigned n);

/// Complexity formulas per attack. `log2_r` may be fractional or negative so
/// the symbolic optimum r = 2^((n-kappa)/4) can be evaluated for any widths.
Prediction ledger_predict(AttackId id, unsigned kappa, unsigned n, std::optional<Rational> log2_r = std::nullopt);

/// Same, by attack name; throws ParameterError for unknown names.
Prediction ledger_predict(std::string_view attack, unsigned kappa, unsigned n,
                          std::optional<Rational> log2_r = std::nullopt);

}  // namespace kleq
