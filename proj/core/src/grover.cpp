#include "kleq/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kleq/errors.hpp"
#include "kleq/oracle.hpp"
#include "kleq/random.hpp"

namespace kleq {

std::uint64_t grover_iteration_count(std::uint64_t domain_size, std::uint64_t marked) {
  const double ratio = static_cast<double>(domain_size) / static_cast<double>(std::max<std::uint64_t>(marked, 1));
  return static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

double grover_success_closed_form(std::uint64_t domain_size, std::uint64_t marked, std::uint64_t iterations) {
  const double theta = std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(domain_size)));
  const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
  return s * s;
}

std::vector<std::uint64_t> mark_all(const SearchSpace& space, CostLedger& ledger) {
  CostLedger::MuteScope mute(ledger);
  SearchPredicateScope scope;
  std::vector<std::uint64_t> marked;
  const std::uint64_t size = space.size();
  for (std::uint64_t x = 0; x < size; ++x) {
    if (space.predicate(x)) {
      marked.push_back(x);
    }
  }
  return marked;
}

namespace {

bool is_marked(const std::vector<std::uint64_t>& marked, std::uint64_t x) {
  return std::binary_search(marked.begin(), marked.end(), x);
}

std::uint64_t sample_unmarked(const std::vector<std::uint64_t>& marked, std::uint64_t size, Rng& rng) {
  for (;;) {
    const std::uint64_t x = uniform_below(rng, size);
    if (!is_marked(marked, x)) {
      return x;
    }
  }
}

void simulate_two_class(std::uint64_t size, const std::vector<std::uint64_t>& marked, std::uint64_t iterations,
                        Rng& rng, std::uint64_t shots, GroverOutcome& out) {
  const double n = static_cast<double>(size);
  const double m = static_cast<double>(marked.size());
  double amp_marked = 1.0 / std::sqrt(n);
  double amp_other = amp_marked;
  for (std::uint64_t j = 0; j < iterations; ++j) {
    amp_marked = -amp_marked;
    const double mean = (m * amp_marked + (n - m) * amp_other) / n;
    amp_marked = 2.0 * mean - amp_marked;
    amp_other = 2.0 * mean - amp_other;
    const double norm = m * amp_marked * amp_marked + (n - m) * amp_other * amp_other;
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(norm - 1.0));
  }
  const double p_marked = m * amp_marked * amp_marked;
  out.success_probability = p_marked;
  for (std::uint64_t s = 0; s < shots; ++s) {
    ++out.samples;
    const bool hit = !marked.empty() && (marked.size() == size || uniform_unit(rng) < p_marked);
    if (hit) {
      ++out.hits;
      if (!out.result) {
        out.result = marked[uniform_below(rng, marked.size())];
      }
    } else {
      (void)sample_unmarked(marked, size, rng);
    }
  }
}

void simulate_full_vector(std::uint64_t size, const std::vector<std::uint64_t>& marked, std::uint64_t iterations,
                          Rng& rng, std::uint64_t shots, GroverOutcome& out) {
  std::vector<double> amps(size, 1.0 / std::sqrt(static_cast<double>(size)));
  for (std::uint64_t j = 0; j < iterations; ++j) {
    for (const auto x : marked) {
      amps[x] = -amps[x];
    }
    double sum = 0.0;
    for (const double a : amps) {
      sum += a;
    }
    const double mean = sum / static_cast<double>(size);
    double norm = 0.0;
    for (double& a : amps) {
      a = 2.0 * mean - a;
      norm += a * a;
    }
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(norm - 1.0));
  }
  double p_marked = 0.0;
  for (const auto x : marked) {
    p_marked += amps[x] * amps[x];
  }
  out.success_probability = p_marked;

  std::vector<double> cumulative(size);
  double acc = 0.0;
  for (std::uint64_t x = 0; x < size; ++x) {
    acc += amps[x] * amps[x];
    cumulative[x] = acc;
  }
  for (std::uint64_t s = 0; s < shots; ++s) {
    ++out.samples;
    const double u = uniform_unit(rng) * acc;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto x = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                                       static_cast<std::ptrdiff_t>(size - 1)));
    if (is_marked(marked, x)) {
      ++out.hits;
      if (!out.result) {
        out.result = x;
      }
    }
  }
}

}  // namespace

GroverOutcome simulate_grover(unsigned width, const std::vector<std::uint64_t>& marked, std::uint64_t iterations,
                              const StatevectorOptions& opts) {
  if (width > kMaxStatevectorWidth) {
    throw ResourceError("statevector width " + std::to_string(width) + " exceeds " +
                        std::to_string(kMaxStatevectorWidth) + "; use the idealized backend");
  }
  GroverOutcome out;
  out.iterations = iterations;
  out.marked_count = marked.size();
  Rng rng(opts.seed);
  const std::uint64_t size = std::uint64_t{1} << width;
  if (opts.mode == StatevectorMode::TwoClass) {
    simulate_two_class(size, marked, iterations, rng, opts.shots, out);
  } else {
    simulate_full_vector(size, marked, iterations, rng, opts.shots, out);
  }
  return out;
}

GroverOutcome grover_statevector(const SearchSpace& space, const StatevectorOptions& opts, CostLedger& ledger) {
  if (space.width > kMaxStatevectorWidth) {
    throw ResourceError("statevector width " + std::to_string(space.width) + " exceeds " +
                        std::to_string(kMaxStatevectorWidth) + "; use the idealized backend");
  }
  const auto marked = mark_all(space, ledger);
  const std::uint64_t iterations =
      opts.iterations.value_or(grover_iteration_count(space.size(), space.expected_marked));
  auto out = simulate_grover(space.width, marked, iterations, opts);
  ledger.add_grover_iterations(iterations * opts.shots);
  ledger.charge_predicate(space.cost, iterations * opts.shots);
  return out;
}

GroverOutcome grover_idealized(const SearchSpace& space, CostLedger& ledger, std::uint64_t start) {
  GroverOutcome out;
  const std::uint64_t size = space.size();
  {
    CostLedger::MuteScope mute(ledger);
    SearchPredicateScope scope;
    std::uint64_t x = start;
    for (; x < size; ++x) {
      if (space.predicate(x)) {
        out.result = x;
        break;
      }
    }
    out.next_scan = out.result ? x + 1 : size;
  }
  out.iterations = grover_iteration_count(size, space.expected_marked);
  out.samples = 1;
  out.hits = out.result ? 1 : 0;
  ledger.add_grover_iterations(out.iterations);
  ledger.charge_predicate(space.cost, out.iterations);
  return out;
}

}  // namespace kleq
