#include "kleq/claw.hpp"

#include <algorithm>
#include <cmath>

#include "kleq/oracle.hpp"

namespace kleq {

std::string_view claw_regime_name(ClawRegime r) noexcept {
  switch (r) {
    case ClawRegime::Balanced:
      return "balanced";
    case ClawRegime::LargeY:
      return "large-y";
    case ClawRegime::Swapped:
      return "swapped";
  }
  return "?";
}

ClawCostModel claw_cost(unsigned x_bits, unsigned y_bits) {
  const auto x = static_cast<std::int64_t>(x_bits);
  const auto y = static_cast<std::int64_t>(y_bits);
  if (2 * y < x) {
    // |Y| < sqrt|X|. With roles exchanged, |X| >= |Y|^2 holds.
    return {Rational(x, 2), Rational(x, 2), ClawRegime::Swapped};
  }
  if (y >= 2 * x) {
    return {Rational(y, 2), Rational(y, 2), ClawRegime::LargeY};
  }
  return {Rational(x + y, 3), Rational(x + y, 3), ClawRegime::Balanced};
}

std::uint64_t ceil_pow2(const Rational& exponent) {
  if (exponent.den() == 1 && exponent.num() >= 0 && exponent.num() < 64) {
    return std::uint64_t{1} << exponent.num();
  }
  return static_cast<std::uint64_t>(std::ceil(std::exp2(exponent.to_double())));
}

ClawResult claw_find(unsigned x_bits, unsigned y_bits, const ClawFunction& f, const ClawFunction& g, CostLedger& ledger,
                     const PredicateCost& per_call) {
  using Tagged = std::pair<ConcatValue, std::uint64_t>;
  std::vector<Tagged> fx(std::size_t{1} << x_bits);
  std::vector<Tagged> gy(std::size_t{1} << y_bits);
  {
    CostLedger::MuteScope mute(ledger);
    SearchPredicateScope scope;
    for (std::uint64_t x = 0; x < fx.size(); ++x) {
      fx[x] = {f(x), x};
    }
    for (std::uint64_t y = 0; y < gy.size(); ++y) {
      gy[y] = {g(y), y};
    }
  }
  std::sort(fx.begin(), fx.end());
  std::sort(gy.begin(), gy.end());

  ClawResult out;
  out.cost = claw_cost(x_bits, y_bits);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fx.size() && j < gy.size()) {
    if (fx[i].first < gy[j].first) {
      ++i;
    } else if (gy[j].first < fx[i].first) {
      ++j;
    } else {
      const auto& v = fx[i].first;
      std::size_t i_end = i;
      std::size_t j_end = j;
      while (i_end < fx.size() && fx[i_end].first == v) {
        ++i_end;
      }
      while (j_end < gy.size() && gy[j_end].first == v) {
        ++j_end;
      }
      for (std::size_t a = i; a < i_end; ++a) {
        for (std::size_t b = j; b < j_end; ++b) {
          out.claws.emplace_back(fx[a].second, gy[b].second);
        }
      }
      i = i_end;
      j = j_end;
    }
  }

  const std::uint64_t calls = ceil_pow2(out.cost.time_exponent);
  ledger.charge_predicate(per_call, calls);
  ledger.note_qram_entries(ceil_pow2(out.cost.qram_exponent));
  ledger.set_predicted(out.cost.time_exponent, out.cost.qram_exponent);
  return out;
}

}  // namespace kleq
