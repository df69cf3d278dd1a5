#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kleq/ledger.hpp"

namespace kleq {

inline constexpr unsigned kMaxStatevectorWidth = 22;

/// Search over {0,1}^width for x with predicate(x) = 1. `cost` is what one
/// predicate evaluation costs in the attack model; `expected_marked` is the
/// M used for the iteration count.
struct SearchSpace {
  unsigned width = 0;
  std::function<bool(std::uint64_t)> predicate;
  PredicateCost cost;
  std::uint64_t expected_marked = 1;

  std::uint64_t size() const noexcept { return std::uint64_t{1} << width; }
};

struct GroverOutcome {
  std::optional<std::uint64_t> result;  // a marked element, if one was obtained
  std::uint64_t iterations = 0;         // per run
  std::optional<double> success_probability;  // statevector only
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;  // samples that landed in the marked set
  std::uint64_t marked_count = 0;
  double max_norm_drift = 0.0;
  std::uint64_t next_scan = 0;  // idealized: where a resumed scan continues
};

/// ceil((pi/4) * sqrt(N/M)).
std::uint64_t grover_iteration_count(std::uint64_t domain_size, std::uint64_t marked);

/// sin^2((2j+1) theta) with sin(theta) = sqrt(M/N).
double grover_success_closed_form(std::uint64_t domain_size, std::uint64_t marked, std::uint64_t iterations);

enum class StatevectorMode {
  TwoClass,    // one amplitude for marked, one for unmarked elements
  FullVector,  // one amplitude per basis state
};

struct StatevectorOptions {
  std::optional<std::uint64_t> iterations;  // empty: auto
  std::uint64_t shots = 1;
  StatevectorMode mode = StatevectorMode::TwoClass;
  std::uint64_t seed = 0;
};

/// Evaluates the predicate over the whole space inside a search-predicate
/// scope with the ledger muted; returns the marked elements in order.
std::vector<std::uint64_t> mark_all(const SearchSpace& space, CostLedger& ledger);

/// Simulates Grover's algorithm on real amplitudes: uniform start, then
/// phase oracle and inversion about the mean. Charges the ledger for
/// iterations x shots predicate calls. Throws ResourceError when width
/// exceeds kMaxStatevectorWidth.
GroverOutcome grover_statevector(const SearchSpace& space, const StatevectorOptions& opts, CostLedger& ledger);

/// Same simulation for a known marked set (sorted), without touching any ledger.
GroverOutcome simulate_grover(unsigned width, const std::vector<std::uint64_t>& marked, std::uint64_t iterations,
                              const StatevectorOptions& opts);

/// Finds the first marked element at or after `start` by classical scan and
/// charges the model cost of one Grover run: ceil((pi/4) sqrt(N/M)) iterations.
/// The result is exact; only the bill follows the quantum model.
GroverOutcome grover_idealized(const SearchSpace& space, CostLedger& ledger, std::uint64_t start = 0);

}  // namespace kleq
