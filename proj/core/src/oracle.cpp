#include "kleq/oracle.hpp"

namespace kleq {

namespace {
thread_local int g_predicate_depth = 0;
}

SearchPredicateScope::SearchPredicateScope() noexcept { ++g_predicate_depth; }
SearchPredicateScope::~SearchPredicateScope() { --g_predicate_depth; }

bool in_search_predicate() noexcept { return g_predicate_depth > 0; }

std::string_view access_model_name(AccessModel m) noexcept { return m == AccessModel::Q1 ? "Q1" : "Q2"; }

void OracleHandle::charge() {
  if (!in_search_predicate()) {
    ledger_->add_classical_queries(1);
    return;
  }
  if (model_ == AccessModel::Q1) {
    throw ModelViolation("Q1 oracle handle queried inside a search predicate");
  }
  ledger_->add_superposition_queries(1);
}

Word OracleHandle::encrypt(Word m) {
  charge();
  return instance_->encrypt(m);
}

Word OracleHandle::decrypt(Word c) {
  charge();
  return instance_->decrypt(c);
}

std::shared_ptr<const std::vector<Word>> OracleHandle::public_twist() const {
  const auto* mid = instance_->middle();
  return mid ? mid->twist() : nullptr;
}

}  // namespace kleq
