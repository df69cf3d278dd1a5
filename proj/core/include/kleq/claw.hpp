#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "kleq/concat.hpp"
#include "kleq/ledger.hpp"
#include "kleq/rational.hpp"

namespace kleq {

enum class ClawRegime {
  Balanced,  // sqrt|X| <= |Y| < |X|^2: (|X||Y|)^(1/3)
  LargeY,    // |Y| >= |X|^2: |Y|^(1/2)
  Swapped,   // |Y| < sqrt|X|: roles exchanged, then LargeY
};

std::string_view claw_regime_name(ClawRegime r) noexcept;

struct ClawCostModel {
  Rational time_exponent;
  Rational qram_exponent;
  ClawRegime regime = ClawRegime::Balanced;
};

/// Quantum claw-finding cost for |X| = 2^x_bits, |Y| = 2^y_bits.
ClawCostModel claw_cost(unsigned x_bits, unsigned y_bits);

struct ClawResult {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> claws;  // sorted by (f value, x, y)
  ClawCostModel cost;

  std::optional<std::pair<std::uint64_t, std::uint64_t>> first() const {
    if (claws.empty()) {
      return std::nullopt;
    }
    return claws.front();
  }
};

using ClawFunction = std::function<ConcatValue(std::uint64_t)>;

/// Claw finding with a classical oracle: evaluates f over X and g over Y
/// inside a search-predicate scope (ledger muted), joins by sort-merge, and
/// bills the ledger the quantum claw-finding model: ceil(2^time_exponent)
/// oracle calls each costing `per_call`, and ceil(2^qram_exponent) QRAM
/// entries. Every returned claw satisfies f(x) == g(y).
ClawResult claw_find(unsigned x_bits, unsigned y_bits, const ClawFunction& f, const ClawFunction& g, CostLedger& ledger,
                     const PredicateCost& per_call = {});

/// ceil(2^e) for a non-negative exponent.
std::uint64_t ceil_pow2(const Rational& exponent);

}  // namespace kleq
