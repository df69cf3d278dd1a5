#pragma once

#include <cstdint>
#include <optional>

#include "kleq/rational.hpp"

namespace kleq {

/// Operation counts for one phase of an attack.
struct CostCounters {
  std::uint64_t construction_queries_classical = 0;
  std::uint64_t construction_queries_superposition = 0;
  std::uint64_t cipher_evals = 0;
  std::uint64_t grover_iterations = 0;
  std::uint64_t predicate_evals = 0;
  std::uint64_t qram_entries = 0;              // peak
  std::uint64_t classical_memory_entries = 0;  // peak
  std::uint64_t comparisons = 0;

  friend bool operator==(const CostCounters&, const CostCounters&) = default;
};

/// Declared cost of one predicate evaluation. Search backends charge
/// (iterations x this) instead of the work they do to simulate the search.
struct PredicateCost {
  std::uint64_t construction_queries = 0;
  std::uint64_t cipher_evals = 0;
  std::uint64_t comparisons = 0;

  friend bool operator==(const PredicateCost&, const PredicateCost&) = default;
  PredicateCost& operator+=(const PredicateCost& o) {
    construction_queries += o.construction_queries;
    cipher_evals += o.cipher_evals;
    comparisons += o.comparisons;
    return *this;
  }
};

/// Per-trial cost ledger. Counters only grow. Charges go to the online phase
/// unless a PreprocessingScope is active, and are dropped while a MuteScope is
/// active (backends use that while they simulate a quantum search classically).
/// Not thread-safe: one ledger per trial.
class CostLedger {
 public:
  class MuteScope {
   public:
    explicit MuteScope(CostLedger& l) : ledger_(l) { ++ledger_.mute_depth_; }
    ~MuteScope() { --ledger_.mute_depth_; }
    MuteScope(const MuteScope&) = delete;
    MuteScope& operator=(const MuteScope&) = delete;

   private:
    CostLedger& ledger_;
  };

  class PreprocessingScope {
   public:
    explicit PreprocessingScope(CostLedger& l) : ledger_(l), prev_(l.preprocessing_active_) {
      ledger_.preprocessing_active_ = true;
    }
    ~PreprocessingScope() { ledger_.preprocessing_active_ = prev_; }
    PreprocessingScope(const PreprocessingScope&) = delete;
    PreprocessingScope& operator=(const PreprocessingScope&) = delete;

   private:
    CostLedger& ledger_;
    bool prev_;
  };

  void add_classical_queries(std::uint64_t k) { if (live()) active().construction_queries_classical += k; }
  void add_superposition_queries(std::uint64_t k) { if (live()) active().construction_queries_superposition += k; }
  void add_cipher_evals(std::uint64_t k) { if (live()) active().cipher_evals += k; }
  void add_grover_iterations(std::uint64_t k) { if (live()) active().grover_iterations += k; }
  void add_predicate_evals(std::uint64_t k) { if (live()) active().predicate_evals += k; }
  void add_comparisons(std::uint64_t k) { if (live()) active().comparisons += k; }
  void note_qram_entries(std::uint64_t k);
  void note_classical_memory(std::uint64_t k);

  /// predicate_evals += times, and each evaluation's declared cost; predicate
  /// construction queries are superposition queries.
  void charge_predicate(const PredicateCost& cost, std::uint64_t times);

  bool muted() const noexcept { return mute_depth_ > 0; }
  const CostCounters& online() const noexcept { return online_; }
  const CostCounters& preprocessing() const noexcept { return preprocessing_; }

  void set_predicted(Rational time_exponent, std::optional<Rational> qram_exponent);
  const std::optional<Rational>& predicted_time_exponent() const noexcept { return predicted_time_; }
  const std::optional<Rational>& predicted_qram_exponent() const noexcept { return predicted_qram_; }

 private:
  bool live() const noexcept { return mute_depth_ == 0; }
  CostCounters& active() noexcept { return preprocessing_active_ ? preprocessing_ : online_; }

  CostCounters online_;
  CostCounters preprocessing_;
  std::optional<Rational> predicted_time_;
  std::optional<Rational> predicted_qram_;
  int mute_depth_ = 0;
  bool preprocessing_active_ = false;
};

}  // namespace kleq
