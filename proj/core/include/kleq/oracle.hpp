#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "kleq/construction.hpp"
#include "kleq/ledger.hpp"

namespace kleq {

/// Q1: classical online queries only. Q2: superposition queries allowed.
enum class AccessModel { Q1, Q2 };

std::string_view access_model_name(AccessModel m) noexcept;

/// Marks the current thread as evaluating a quantum search predicate
/// (Grover oracle or claw-finding oracle). Nestable.
class SearchPredicateScope {
 public:
  SearchPredicateScope() noexcept;
  ~SearchPredicateScope();
  SearchPredicateScope(const SearchPredicateScope&) = delete;
  SearchPredicateScope& operator=(const SearchPredicateScope&) = delete;
};

bool in_search_predicate() noexcept;

/// The attacker's view of a keyed construction: queries plus public
/// parameters. Queries issued inside a SearchPredicateScope count as
/// superposition queries under Q2 and throw ModelViolation under Q1.
/// One handle per trial; counters go to the wired ledger.
class OracleHandle {
 public:
  OracleHandle(const ConstructionInstance& instance, AccessModel model, CostLedger& ledger) noexcept
      : instance_(&instance), model_(model), ledger_(&ledger) {}

  Word encrypt(Word m);
  Word decrypt(Word c);

  AccessModel model() const noexcept { return model_; }
  CostLedger& ledger() const noexcept { return *ledger_; }
  const SchemeConfig& config() const noexcept { return instance_->config(); }
  unsigned n() const noexcept { return instance_->n(); }
  unsigned kappa() const noexcept { return instance_->kappa(); }
  const ToyCipher& cipher(int i) const { return instance_->cipher(i); }
  std::shared_ptr<const std::vector<Word>> public_twist() const;

  /// The public algorithm keyed with a guessed tuple.
  ConstructionInstance instantiate(KeyTuple guess) const { return instance_->with_keys(std::move(guess)); }

 private:
  void charge();

  const ConstructionInstance* instance_;
  AccessModel model_;
  CostLedger* ledger_;
};

}  // namespace kleq
