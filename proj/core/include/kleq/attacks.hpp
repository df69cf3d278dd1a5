#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kleq/attack_id.hpp"
#include "kleq/claw.hpp"
#include "kleq/construction.hpp"
#include "kleq/distinguisher.hpp"
#include "kleq/grover.hpp"
#include "kleq/ledger.hpp"
#include "kleq/mitm.hpp"
#include "kleq/oracle.hpp"
#include "kleq/predict.hpp"

namespace kleq {

enum class Backend { Statevector, Idealized };

std::string_view backend_name(Backend b) noexcept;
std::optional<Backend> parse_backend(std::string_view name) noexcept;

struct AttackOptions {
  Backend backend = Backend::Idealized;
  std::optional<std::uint64_t> r;  // sub-table count; attack default when empty
  std::optional<unsigned> t;       // data / block count; attack default when empty
  std::uint64_t seed = 0;          // attacker randomness: data plaintexts, measurement samples
  unsigned retry_cap = 3;
  std::uint64_t shots = 3;  // statevector measurements per search call before giving up
  /// Test hook: a claw placed ahead of the genuine ones, to exercise
  /// candidate rejection.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> injected_claw;
};

/// What one attack run did and found. `ledger` holds online costs;
/// `preprocessing` the reusable table-building phase.
struct AttackReport {
  AttackId attack = AttackId::QcfMitm2kte;
  Scheme scheme = Scheme::TwoKeyTriple;
  MiddleKind middle = MiddleKind::Xor;
  unsigned kappa = 0;
  unsigned n = 0;
  unsigned t = 0;
  std::uint64_t r = 1;
  AccessModel model = AccessModel::Q2;
  Backend backend = Backend::Idealized;
  std::uint64_t seed = 0;

  bool success = false;
  std::optional<KeyTuple> recovered;
  std::vector<KeySlot> key_slots;
  std::string failure;

  CostCounters ledger;
  CostCounters preprocessing;
  Prediction predicted;
  std::optional<ClawRegime> regime;

  std::uint64_t search_calls = 0;        // Grover runs or claw-finding runs
  std::uint64_t iterations_per_call = 0;  // Grover iterations of one run
  std::uint64_t sub_table_calls = 0;     // sub-tables searched until success
  std::uint64_t candidates_rejected = 0;
  std::uint64_t attempts = 0;            // data collections (retries + 1)

  std::optional<double> wall_clock_seconds;
};

// Individual attacks. Each uses only the handle's public surface and its
// queries; the report's success flag is the attack's own verification on
// fresh pairs. Field values that depend on the run configuration (seed,
// backend) are filled from `opts`.
AttackReport qcf_mitm_2kte(OracleHandle& handle, const AttackOptions& opts);
AttackReport grover_mitm_2kte(OracleHandle& handle, const AttackOptions& opts);
AttackReport mitm_3xce_q2_qcf(OracleHandle& handle, const AttackOptions& opts);
AttackReport mitm_3xce_q2_grover(OracleHandle& handle, const AttackOptions& opts);
AttackReport mitm_3xce_q1(OracleHandle& handle, const AttackOptions& opts);
AttackReport sitm_3xce(OracleHandle& handle, const AttackOptions& opts);
AttackReport sitm_karc(OracleHandle& handle, const AttackOptions& opts);
AttackReport mirror_slide_sitm_q1(OracleHandle& handle, const AttackOptions& opts);
AttackReport mirror_slide_sitm_q2(OracleHandle& handle, const AttackOptions& opts);

/// Generic sieve-in-the-middle search target: keys of `width` bits, the pair
/// set S_x of size t a guess induces, and the work building S_x costs.
struct SitmTarget {
  unsigned width = 0;
  std::uint64_t t = 0;
  std::function<PairSet(std::uint64_t)> pairs;
  PredicateCost build_cost;
};

/// Grover search over the target with F(x) = A(S_x). Calls `accept` on each
/// candidate in turn until it returns true (then returns that candidate) or
/// the search space is exhausted (returns nullopt). Charges the ledger
/// T + build cost per predicate call.
std::optional<std::uint64_t> sitm_generic(const SitmTarget& target, const Distinguisher& distinguisher,
                                          CostLedger& ledger, const AttackOptions& opts,
                                          const std::function<bool(std::uint64_t)>& accept,
                                          AttackReport* report = nullptr);

/// Everything needed to set up and run one seeded attack.
struct RunConfig {
  AttackId attack = AttackId::QcfMitm2kte;
  unsigned kappa = 8;
  unsigned n = 8;
  std::optional<Scheme> scheme;
  std::optional<MiddleKind> middle;
  bool share_ciphers = false;
  std::optional<std::uint64_t> cipher_id;
  std::optional<std::uint64_t> r;
  std::optional<unsigned> t;
  Backend backend = Backend::Idealized;
  std::optional<AccessModel> model;
  std::uint64_t seed = 0;
};

/// Default scheme, middle layer and access model for an attack.
Scheme default_scheme(AttackId id) noexcept;
MiddleKind default_middle(AttackId id) noexcept;
AccessModel required_model(AttackId id) noexcept;

/// Rejects invalid combinations with a ParameterError naming the fields.
void validate(const RunConfig& cfg);

/// The public configuration and secret instance a run uses.
SchemeConfig scheme_config(const RunConfig& cfg);
ConstructionInstance make_instance(const RunConfig& cfg);

/// Validates, builds the seeded instance, runs the attack, and confirms
/// success by re-encrypting 2 fresh plaintexts under the recovered keys.
AttackReport run_attack(const RunConfig& cfg);

/// True when `guess` agrees with `truth` on `count` fresh random plaintexts.
bool confirm_keys(const ConstructionInstance& truth, const KeyTuple& guess, std::uint64_t seed, unsigned count = 2);

}  // namespace kleq
