#include "kleq/ledger.hpp"

#include <algorithm>

namespace kleq {

void CostLedger::note_qram_entries(std::uint64_t k) {
  if (live()) {
    active().qram_entries = std::max(active().qram_entries, k);
  }
}

void CostLedger::note_classical_memory(std::uint64_t k) {
  if (live()) {
    active().classical_memory_entries = std::max(active().classical_memory_entries, k);
  }
}

void CostLedger::charge_predicate(const PredicateCost& cost, std::uint64_t times) {
  add_predicate_evals(times);
  add_superposition_queries(cost.construction_queries * times);
  add_cipher_evals(cost.cipher_evals * times);
  add_comparisons(cost.comparisons * times);
}

void CostLedger::set_predicted(Rational time_exponent, std::optional<Rational> qram_exponent) {
  predicted_time_ = time_exponent;
  predicted_qram_ = qram_exponent;
}

}  // namespace kleq
