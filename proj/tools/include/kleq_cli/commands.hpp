#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "kleq/grover.hpp"
#include "kleq_cli/config.hpp"

namespace kleq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Runs one seeded attack and writes its JSON report to cfg.out (or `out`).
/// 0 on success, 2 on a failure report; throws UsageError for bad input.
int cmd_attack(const ExperimentConfig& cfg, std::ostream& out);

/// Runs cfg.trials seeds (seed ^ trial) for each r in cfg.r and writes CSV.
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out);

struct VerifyConfig {
  std::string suite = "all";  // propositions | grover | mirror | all
  std::optional<std::uint64_t> trials;
  unsigned kappa = 8;
  unsigned n = 8;
  std::uint64_t seed = 0;
};

/// Ground-truth suites; prints one line per check. 0 when all pass, else 2.
int cmd_verify(const VerifyConfig& cfg, std::ostream& out);

struct GroverDemoConfig {
  unsigned width = 10;
  std::uint64_t marked = 1;
  std::optional<std::uint64_t> iterations;  // empty: auto
  std::uint64_t shots = 1000;
  StatevectorMode mode = StatevectorMode::TwoClass;
  std::uint64_t seed = 0;
};

/// Statevector demo: prints the outcome as JSON.
int cmd_grover(const GroverDemoConfig& cfg, std::ostream& out);

/// Worker count from WORKBENCH_THREADS, else the hardware concurrency.
unsigned worker_threads();

/// Calls fn(i) for i in [0, count) on up to worker_threads() threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace kleq::cli
