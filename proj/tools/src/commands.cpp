#include "kleq_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

#include "kleq/errors.hpp"
#include "kleq/groundtruth.hpp"
#include "kleq/random.hpp"
#include "kleq_cli/report.hpp"

namespace kleq::cli {

unsigned worker_threads() {
  if (const char* env = std::getenv("WORKBENCH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) {
      return static_cast<unsigned>(v);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

namespace {

AttackReport timed_run(const RunConfig& rc, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  auto rep = run_attack(rc);
  if (timing) {
    rep.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rep;
}

void write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& fallback) {
  if (!path) {
    fallback << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    throw UsageError("cannot write output file " + *path);
  }
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string num(double v, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

int cmd_attack(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.r.size() > 1) {
    throw UsageError("attack takes a single r; use sweep for several");
  }
  const auto rc = to_run_config(cfg, cfg.r.empty() ? std::nullopt : std::optional(cfg.r.front()), cfg.seed);
  AttackReport rep;
  try {
    rep = timed_run(rc, cfg.timing);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  } catch (const ResourceError& e) {
    throw UsageError(e.what());
  }
  write_output(cfg.out, report_json(rep).dump(2) + "\n", out);
  return rep.success ? kExitOk : kExitFailure;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  std::vector<std::optional<std::uint64_t>> grid;
  if (cfg.r.empty()) {
    grid.emplace_back(std::nullopt);
  } else {
    for (const auto r : cfg.r) {
      grid.emplace_back(r);
    }
  }
  std::vector<RunConfig> runs;
  std::vector<std::string> groups;
  for (const auto& r : grid) {
    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
      runs.push_back(to_run_config(cfg, r, cfg.seed ^ trial));
      groups.push_back(r ? "r=" + std::to_string(*r) : "default");
    }
  }
  std::vector<AttackReport> reports(runs.size());
  try {
    parallel_for(runs.size(), [&](std::size_t i) { reports[i] = timed_run(runs[i], cfg.timing); });
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  } catch (const ResourceError& e) {
    throw UsageError(e.what());
  }
  write_output(cfg.out, reports_csv(reports, groups), out);
  return kExitOk;
}

namespace {

bool verify_propositions(const VerifyConfig& cfg, std::ostream& out) {
  const std::uint64_t trials = cfg.trials.value_or(2000);
  bool all_ok = true;
  for (const Scheme scheme : {Scheme::TwoKeyTriple, Scheme::GeneralizedTwoKeyTriple}) {
    std::uint64_t claw_at_keys = 0;
    std::uint64_t spurious = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      SchemeConfig sc;
      sc.scheme = scheme;
      sc.kappa = cfg.kappa;
      sc.n = cfg.n;
      sc.cipher_base_id = derive_seed(cfg.seed ^ trial, 0x70726f70);
      const auto inst = ConstructionInstance::random(sc, derive_seed(cfg.seed ^ trial, 0x6b657973));
      CostLedger ledger;
      OracleHandle handle(inst, AccessModel::Q2, ledger);
      const auto claws = enumerate_claws(build_fg_2kte(handle));
      const std::pair<std::uint64_t, std::uint64_t> truth{inst.secret_keys().parts[0], inst.secret_keys().parts[1]};
      claw_at_keys += std::binary_search(claws.begin(), claws.end(), truth) ? 1 : 0;
      spurious += claws.size() > 1 ? 1 : 0;
    }
    const std::string name(scheme_name(scheme));
    const bool claw_ok = claw_at_keys == trials;
    const double rate = trials ? static_cast<double>(spurious) / static_cast<double>(trials) : 0.0;
    const bool rate_ok = rate <= 0.05;
    out << "claw-at-keys " << name << " f(k1)=g(k2): " << claw_at_keys << "/" << trials << " " << verdict(claw_ok) << "\n";
    out << "spurious-claws " << name << " spurious-claw rate: " << spurious << "/" << trials << " = " << num(rate, "%.4f")
        << " (gate 0.05) " << verdict(rate_ok) << "\n";
    all_ok = all_ok && claw_ok && rate_ok;
  }
  return all_ok;
}

bool verify_grover(std::ostream& out) {
  double max_err = 0.0;
  double max_drift = 0.0;
  double max_full_err = 0.0;
  std::uint64_t cases = 0;
  for (unsigned w = 4; w <= 20; w += 2) {
    const std::uint64_t size = std::uint64_t{1} << w;
    for (const std::uint64_t m : {1u, 2u, 4u, 16u}) {
      if (m >= size) {
        continue;
      }
      std::vector<std::uint64_t> marked(m);
      for (std::uint64_t i = 0; i < m; ++i) {
        marked[i] = i * (size / m);
      }
      const auto auto_j = grover_iteration_count(size, m);
      for (std::uint64_t j = 0; j <= 2 * auto_j; ++j) {
        StatevectorOptions opts;
        opts.iterations = j;
        const auto o = simulate_grover(w, marked, j, opts);
        max_err = std::max(max_err, std::abs(*o.success_probability - grover_success_closed_form(size, m, j)));
        max_drift = std::max(max_drift, o.max_norm_drift);
        if (w <= 12) {
          opts.mode = StatevectorMode::FullVector;
          const auto full = simulate_grover(w, marked, j, opts);
          max_full_err = std::max(max_full_err, std::abs(*full.success_probability - *o.success_probability));
          max_drift = std::max(max_drift, full.max_norm_drift);
        }
        ++cases;
      }
    }
  }
  const bool ok_err = max_err <= 1e-6;
  const bool ok_full = max_full_err <= 1e-9;
  const bool ok_drift = max_drift <= 1e-9;
  out << "grover closed form: max |simulated - closed form| = " << num(max_err, "%.3e") << " over " << cases
      << " cases (gate 1e-6) " << verdict(ok_err) << "\n";
  out << "grover full vector vs two-class: max diff = " << num(max_full_err, "%.3e") << " (gate 1e-9) "
      << verdict(ok_full) << "\n";
  out << "grover norm drift: max = " << num(max_drift, "%.3e") << " (gate 1e-9) " << verdict(ok_drift) << "\n";
  return ok_err && ok_full && ok_drift;
}

bool verify_mirror(const VerifyConfig& cfg, std::ostream& out) {
  const std::uint64_t trials = cfg.trials.value_or(500);
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  std::uint64_t planted_found = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    SchemeConfig sc;
    sc.scheme = Scheme::TildeThreeXorCascade;
    sc.middle = MiddleKind::RandomInvolution;
    sc.kappa = cfg.kappa;
    sc.n = cfg.n;
    sc.cipher_base_id = derive_seed(cfg.seed ^ trial, 0x6d697272);
    sc.public_seed = derive_seed(sc.cipher_base_id, 0x7075626c);
    const auto inst = ConstructionInstance::random(sc, derive_seed(cfg.seed ^ trial, 0x6b657973));
    const Word k = inst.secret_keys().parts[0];
    const Word k1 = inst.secret_keys().parts[1];
    Rng rng(derive_seed(cfg.seed ^ trial, 0x70747874));
    const std::uint64_t domain = std::uint64_t{1} << cfg.n;
    // A planted pair: E1_k(m ^ k1) = D2_k(c* ^ k1) = i.
    const auto i = static_cast<Word>(uniform_below(rng, domain));
    const Word m = inst.cipher(1).decrypt(k, i) ^ k1;
    const Word m_star = inst.decrypt(inst.cipher(2).encrypt(k, i) ^ k1);
    std::vector<Word> plaintexts{m, m_star};
    const std::size_t t = std::min<std::uint64_t>(23, domain - 2);
    while (plaintexts.size() < t + 2) {
      const auto p = static_cast<Word>(uniform_below(rng, domain));
      if (std::find(plaintexts.begin(), plaintexts.end(), p) == plaintexts.end()) {
        plaintexts.push_back(p);
      }
    }
    const auto scan = enumerate_mirror_pairs(inst, plaintexts);
    pairs += scan.pairs.size();
    violations += scan.violations;
    const bool planted = m == m_star ||
                         std::find(scan.pairs.begin(), scan.pairs.end(), std::pair<std::size_t, std::size_t>{0, 1}) !=
                             scan.pairs.end();
    planted_found += planted ? 1 : 0;
  }
  const bool ok = violations == 0 && planted_found == trials;
  out << "mirror slid pairs: " << pairs << " found, planted " << planted_found << "/" << trials
      << ", implied-relation violations: " << violations << " " << verdict(ok) << "\n";
  return ok;
}

}  // namespace

int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
  const auto& s = cfg.suite;
  if (s != "propositions" && s != "grover" && s != "mirror" && s != "all") {
    throw UsageError("unknown suite '" + s + "'; valid: propositions, grover, mirror, all");
  }
  bool ok = true;
  try {
    if (s == "propositions" || s == "all") {
      ok = verify_propositions(cfg, out) && ok;
    }
    if (s == "grover" || s == "all") {
      ok = verify_grover(out) && ok;
    }
    if (s == "mirror" || s == "all") {
      ok = verify_mirror(cfg, out) && ok;
    }
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_grover(const GroverDemoConfig& cfg, std::ostream& out) {
  if (cfg.width > kMaxStatevectorWidth) {
    throw UsageError("width " + std::to_string(cfg.width) + " exceeds the statevector limit of " +
                     std::to_string(kMaxStatevectorWidth));
  }
  const std::uint64_t size = std::uint64_t{1} << cfg.width;
  if (cfg.marked > size) {
    throw UsageError("marked count exceeds the search space");
  }
  std::vector<std::uint64_t> marked(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    marked[i] = i;
  }
  Rng rng(derive_seed(cfg.seed, 0x6d61726b));
  shuffle_in_place(marked, rng);
  marked.resize(cfg.marked);
  std::sort(marked.begin(), marked.end());

  StatevectorOptions opts;
  opts.shots = cfg.shots;
  opts.mode = cfg.mode;
  opts.seed = derive_seed(cfg.seed, 0x73686f74);
  const std::uint64_t iterations = cfg.iterations.value_or(grover_iteration_count(size, std::max<std::uint64_t>(cfg.marked, 1)));
  const auto o = simulate_grover(cfg.width, marked, iterations, opts);

  nlohmann::ordered_json j;
  j["width"] = cfg.width;
  j["marked"] = cfg.marked;
  j["iterations"] = iterations;
  j["mode"] = cfg.mode == StatevectorMode::TwoClass ? "two-class" : "full-vector";
  j["success_probability"] = *o.success_probability;
  j["closed_form"] = cfg.marked ? grover_success_closed_form(size, cfg.marked, iterations) : 0.0;
  j["shots"] = o.samples;
  j["hits"] = o.hits;
  j["frequency"] = o.samples ? static_cast<double>(o.hits) / static_cast<double>(o.samples) : 0.0;
  j["max_norm_drift"] = o.max_norm_drift;
  j["result"] = o.result ? nlohmann::ordered_json(*o.result) : nlohmann::ordered_json(nullptr);
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace kleq::cli
