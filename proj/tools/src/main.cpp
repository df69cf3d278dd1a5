#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kleq/errors.hpp"
#include "kleq_cli/commands.hpp"

namespace {

using kleq::cli::ExperimentConfig;

// Flags bound here override values loaded from --config.
struct ExperimentFlags {
  std::string config;
  std::string name;
  unsigned kappa = 8;
  unsigned n = 8;
  std::string scheme;
  std::string middle;
  bool share_ciphers = false;
  std::uint64_t cipher_id = 0;
  std::vector<std::uint64_t> r;
  unsigned t = 0;
  std::string backend;
  std::string model;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string out;
  bool timing = false;

  std::vector<CLI::Option*> opts;

  void add_to(CLI::App& app, bool sweep) {
    opts = {
        app.add_option("--config", config, "JSON config file; flags override its values"),
        app.add_option("--name,--attack", name, "attack id"),
        app.add_option("--kappa", kappa, "cascade key length in bits"),
        app.add_option("--n", n, "block length in bits"),
        app.add_option("--scheme", scheme, "construction: 2kte, 2kte-ede, g2kte, 3xce, 3xce-tilde, karc, ele"),
        app.add_option("--middle", middle, "middle layer: xor, reflection-affine, random-involution, p-twisted-involution"),
        app.add_flag("--share-ciphers", share_ciphers, "3XCE family: use one cipher for E1 and E2"),
        app.add_option("--cipher-id", cipher_id, "base cipher id (default: derived from the seed)"),
        app.add_option("--r", r, sweep ? "sub-table counts, comma separated" : "sub-table count")->delimiter(','),
        app.add_option("--t", t, "data / block count"),
        app.add_option("--backend", backend, "statevector or idealized"),
        app.add_option("--model", model, "Q1 or Q2"),
        app.add_option("--seed", seed, sweep ? "base seed; trial i uses seed ^ i" : "seed"),
        app.add_option("--out", out, sweep ? "CSV output path (default stdout)" : "JSON output path (default stdout)"),
        app.add_flag("--timing", timing, "record wall-clock seconds (makes output non-deterministic)"),
    };
    if (sweep) {
      opts.push_back(app.add_option("--trials", trials, "trials per parameter group"));
    }
  }

  bool given(const std::string& flag) const {
    for (const auto* o : opts) {
      if (o->check_lname(flag.substr(2)) && o->count() > 0) {
        return true;
      }
    }
    return false;
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg = given("--config") ? kleq::cli::load_config_file(config) : ExperimentConfig{};
    if (given("--name")) cfg.attack = name;
    if (given("--kappa")) cfg.kappa = kappa;
    if (given("--n")) cfg.n = n;
    if (given("--scheme")) cfg.scheme = scheme;
    if (given("--middle")) cfg.middle = middle;
    if (given("--share-ciphers")) cfg.share_ciphers = share_ciphers;
    if (given("--cipher-id")) cfg.cipher_id = cipher_id;
    if (given("--r")) cfg.r = r;
    if (given("--t")) cfg.t = t;
    if (given("--backend")) cfg.backend = backend;
    if (given("--model")) cfg.model = model;
    if (given("--trials")) cfg.trials = trials;
    if (given("--seed")) cfg.seed = seed;
    if (given("--out")) cfg.out = out;
    if (given("--timing")) cfg.timing = timing;
    if (cfg.attack.empty()) {
      throw kleq::cli::UsageError("missing --name; valid ids: " + kleq::cli::attack_id_list());
    }
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum key-length-extension attack workbench"};
  app.require_subcommand(1);

  ExperimentFlags attack_flags;
  auto* attack = app.add_subcommand("attack", "run one seeded attack and write a JSON report");
  attack_flags.add_to(*attack, false);

  ExperimentFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "run many seeds over an r grid and write CSV");
  sweep_flags.add_to(*sweep, true);

  kleq::cli::VerifyConfig verify_cfg;
  std::uint64_t verify_trials = 0;
  auto* verify = app.add_subcommand("verify", "run ground-truth check suites");
  verify->add_option("--suite", verify_cfg.suite, "propositions, grover, mirror or all");
  auto* verify_trials_opt = verify->add_option("--trials", verify_trials, "instances per suite");
  verify->add_option("--kappa", verify_cfg.kappa, "key length in bits");
  verify->add_option("--n", verify_cfg.n, "block length in bits");
  verify->add_option("--seed", verify_cfg.seed, "base seed");

  kleq::cli::GroverDemoConfig grover_cfg;
  std::string grover_iterations = "auto";
  std::string grover_mode = "two-class";
  auto* grover = app.add_subcommand("grover", "statevector Grover demo");
  grover->add_option("--width", grover_cfg.width, "search width in qubits");
  grover->add_option("--marked", grover_cfg.marked, "number of marked elements");
  grover->add_option("--iterations", grover_iterations, "auto or a count");
  grover->add_option("--shots", grover_cfg.shots, "measurements");
  grover->add_option("--mode", grover_mode, "two-class or full-vector");
  grover->add_option("--seed", grover_cfg.seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kleq::cli::kExitUsage;
  }

  try {
    if (attack->parsed()) {
      return kleq::cli::cmd_attack(attack_flags.resolve(), std::cout);
    }
    if (sweep->parsed()) {
      return kleq::cli::cmd_sweep(sweep_flags.resolve(), std::cout);
    }
    if (verify->parsed()) {
      if (verify_trials_opt->count() > 0) {
        verify_cfg.trials = verify_trials;
      }
      return kleq::cli::cmd_verify(verify_cfg, std::cout);
    }
    if (grover->parsed()) {
      if (grover_iterations != "auto") {
        try {
          grover_cfg.iterations = std::stoull(grover_iterations);
        } catch (const std::exception&) {
          throw kleq::cli::UsageError("--iterations must be 'auto' or a count");
        }
      }
      if (grover_mode == "full-vector") {
        grover_cfg.mode = kleq::StatevectorMode::FullVector;
      } else if (grover_mode != "two-class") {
        throw kleq::cli::UsageError("--mode must be two-class or full-vector");
      }
      return kleq::cli::cmd_grover(grover_cfg, std::cout);
    }
  } catch (const kleq::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kleq::cli::kExitUsage;
  } catch (const kleq::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kleq::cli::kExitUsage;
  } catch (const kleq::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kleq::cli::kExitUsage;
  }
  return kleq::cli::kExitUsage;
}
