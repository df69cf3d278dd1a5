#include "kleq/attacks.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "kleq/errors.hpp"
#include "kleq/random.hpp"

namespace kleq {

namespace {

constexpr std::array<std::pair<Backend, std::string_view>, 2> kBackendNames{{
    {Backend::Statevector, "statevector"},
    {Backend::Idealized, "idealized"},
}};

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

Rational log2_exact(std::uint64_t r) { return static_cast<std::int64_t>(ceil_log2(r)); }

// Successive Grover runs over one search space, each returning a marked
// element not returned before. The idealized backend resumes its scan; the
// statevector backend removes returned elements from the marked set and
// measures up to `shots` times per run.
class KeySearch {
 public:
  KeySearch(unsigned width, KeyPredicate pred, const AttackOptions& opts, CostLedger& ledger, Rng& rng)
      : opts_(opts), ledger_(ledger), rng_(rng) {
    space_.width = width;
    space_.predicate = std::move(pred.test);
    space_.cost = pred.cost;
  }

  std::optional<std::uint64_t> next(AttackReport& report) {
    ++report.search_calls;
    if (opts_.backend == Backend::Idealized) {
      const auto out = grover_idealized(space_, ledger_, scan_);
      scan_ = out.next_scan;
      report.iterations_per_call = out.iterations;
      return out.result;
    }
    if (!marked_) {
      marked_ = mark_all(space_, ledger_);
    }
    const std::uint64_t iterations = grover_iteration_count(space_.size(), space_.expected_marked);
    report.iterations_per_call = iterations;
    for (std::uint64_t shot = 0; shot < std::max<std::uint64_t>(opts_.shots, 1); ++shot) {
      StatevectorOptions so;
      so.iterations = iterations;
      so.seed = rng_();
      const auto out = simulate_grover(space_.width, *marked_, iterations, so);
      ledger_.add_grover_iterations(iterations);
      ledger_.charge_predicate(space_.cost, iterations);
      if (out.result) {
        marked_->erase(std::lower_bound(marked_->begin(), marked_->end(), *out.result));
        return out.result;
      }
    }
    return std::nullopt;
  }

 private:
  SearchSpace space_;
  const AttackOptions& opts_;
  CostLedger& ledger_;
  Rng& rng_;
  std::uint64_t scan_ = 0;
  std::optional<std::vector<std::uint64_t>> marked_;
};

AttackReport start_report(AttackId id, const OracleHandle& handle, const AttackOptions& opts, unsigned t,
                          std::uint64_t r) {
  AttackReport rep;
  rep.attack = id;
  const auto& cfg = handle.config();
  rep.scheme = cfg.scheme;
  rep.middle = effective_middle(cfg).value_or(MiddleKind::Xor);
  rep.kappa = cfg.kappa;
  rep.n = cfg.n;
  rep.t = t;
  rep.r = r;
  rep.model = handle.model();
  rep.backend = opts.backend;
  rep.seed = opts.seed;
  rep.key_slots = key_layout(cfg);
  const bool partitioned = id == AttackId::GroverMitm2kte || id == AttackId::TradeoffMitm2kte ||
                           id == AttackId::GroverMitmG2kte || id == AttackId::Q2Grover3xce ||
                           id == AttackId::Q2Tradeoff3xce;
  rep.predicted = ledger_predict(id, cfg.kappa, cfg.n,
                                 partitioned ? std::optional<Rational>(log2_exact(r)) : std::nullopt);
  handle.ledger().set_predicted(rep.predicted.time_exponent, rep.predicted.qram_exponent);
  return rep;
}

AttackReport& finish(AttackReport& rep, const CostLedger& ledger) {
  rep.ledger = ledger.online();
  rep.preprocessing = ledger.preprocessing();
  if (!rep.success && rep.failure.empty()) {
    rep.failure = "search exhausted without a verified key";
  }
  return rep;
}

bool verify_guess(OracleHandle& handle, const KeyTuple& guess, const std::vector<PlainCipherPair>& pairs) {
  const auto inst = handle.instantiate(guess);
  handle.ledger().add_cipher_evals(3 * pairs.size());
  return std::all_of(pairs.begin(), pairs.end(), [&](const PlainCipherPair& p) { return inst.encrypt(p.m) == p.c; });
}

std::vector<Word> constants_1_to(unsigned t) {
  std::vector<Word> v;
  for (Word i = 1; i <= t; ++i) {
    v.push_back(i);
  }
  return v;
}

std::vector<Word> plaintexts_of(const std::vector<PlainCipherPair>& pairs) {
  std::vector<Word> v;
  for (const auto& p : pairs) {
    v.push_back(p.m);
  }
  return v;
}

KeyTuple split_3xce(std::uint64_t x, std::uint64_t y, unsigned n) {
  return {{static_cast<Word>(x >> n), static_cast<Word>(x) & low_mask(n), static_cast<Word>(y)}};
}

using TupleMaker = std::function<KeyTuple(std::uint64_t x, std::uint64_t y)>;

AttackReport qcf_mitm(AttackId id, OracleHandle& handle, const AttackOptions& opts, const MitmFunctionPair& pair,
                      const TupleMaker& make_tuple) {
  auto& ledger = handle.ledger();
  AttackReport rep = start_report(id, handle, opts, pair.t, 1);
  Rng rng(opts.seed);
  const auto constants = constants_1_to(pair.t);
  const auto check = collect_pairs(handle, 2, rng, constants);
  rep.attempts = 1;

  auto result = claw_find(pair.x_bits, pair.y_bits, pair.f, pair.g, ledger, pair.f_cost);
  rep.search_calls = 1;
  rep.regime = result.cost.regime;
  ledger.set_predicted(rep.predicted.time_exponent, rep.predicted.qram_exponent);
  if (opts.injected_claw) {
    result.claws.insert(result.claws.begin(), *opts.injected_claw);
  }
  for (const auto& [x, y] : result.claws) {
    const KeyTuple guess = make_tuple(x, y);
    if (verify_guess(handle, guess, check)) {
      rep.success = true;
      rep.recovered = guess;
      return finish(rep, ledger);
    }
    ++rep.candidates_rejected;
  }
  rep.failure = result.claws.empty() ? "no claw found" : "every claw failed verification";
  return finish(rep, ledger);
}

AttackReport table_mitm(AttackId id, OracleHandle& handle, const AttackOptions& opts, const MitmFunctionPair& pair,
                        std::uint64_t r, const TupleMaker& make_tuple) {
  auto& ledger = handle.ledger();
  AttackReport rep = start_report(id, handle, opts, pair.t, r);
  Rng rng(opts.seed);

  const auto table = [&] {
    CostLedger::PreprocessingScope pre(ledger);
    return MembershipTable::build(pair, r, ledger);
  }();
  const auto check = collect_pairs(handle, 2, rng, constants_1_to(pair.t));
  rep.attempts = 1;

  for (std::uint64_t i = 0; i < r; ++i) {
    ++rep.sub_table_calls;
    const auto view = table.view(i);
    ledger.note_qram_entries(view.size());
    KeySearch search(pair.x_bits, predicate_F_table(pair, view), opts, ledger, rng);
    while (const auto x = search.next(rep)) {
      const auto fx = pair.f(*x);
      ledger.add_cipher_evals(pair.f_cost.cipher_evals);
      ledger.add_comparisons(ceil_log2(view.size()));
      for (const auto y : MembershipTable::lookup(view, fx)) {
        const KeyTuple guess = make_tuple(*x, y);
        if (verify_guess(handle, guess, check)) {
          rep.success = true;
          rep.recovered = guess;
          return finish(rep, ledger);
        }
        ++rep.candidates_rejected;
      }
    }
  }
  return finish(rep, ledger);
}

std::uint64_t default_r(AttackId id, unsigned kappa, unsigned n) {
  switch (id) {
    case AttackId::TradeoffMitm2kte:
      return std::uint64_t{1} << (kappa / 4);
    case AttackId::Q2Tradeoff3xce:
      return n > kappa ? std::uint64_t{1} << ((n - kappa) / 4) : 1;
    default:
      return 1;
  }
}

AttackId twokte_id(const OracleHandle& h, AttackId plain, AttackId generalized) {
  return h.config().scheme == Scheme::GeneralizedTwoKeyTriple ? generalized : plain;
}

// Candidate k2 values for the configured middle layer given constraints
// L(a_i) = b_i, by exhaustive scan over {0,1}^n. Table-based layers are built
// once and cached when n is small.
class MiddleCompleter {
 public:
  MiddleCompleter(MiddleKind kind, unsigned n, std::uint64_t public_seed)
      : kind_(kind), n_(n), public_seed_(public_seed) {}

  std::vector<Word> solve(std::span<const BlockPair> constraints, CostLedger& ledger) {
    std::vector<Word> out;
    const std::size_t count = std::size_t{1} << n_;
    const bool tabled = kind_ == MiddleKind::RandomInvolution || kind_ == MiddleKind::PTwistedInvolution;
    if (tabled && n_ <= 10 && cache_.empty()) {
      cache_.reserve(count);
      for (std::size_t k2 = 0; k2 < count; ++k2) {
        const MiddleLayer layer(kind_, n_, static_cast<Word>(k2), public_seed_);
        std::vector<Word> fwd(count);
        for (std::size_t x = 0; x < count; ++x) {
          fwd[x] = layer.apply(static_cast<Word>(x));
        }
        cache_.push_back(std::move(fwd));
      }
    }
    for (std::size_t k2 = 0; k2 < count; ++k2) {
      bool ok = true;
      if (!cache_.empty()) {
        for (const auto& c : constraints) {
          ok = ok && cache_[k2][c.a] == c.b;
        }
      } else {
        const MiddleLayer layer(kind_, n_, static_cast<Word>(k2), public_seed_);
        for (const auto& c : constraints) {
          ok = ok && layer.apply(c.a) == c.b;
        }
      }
      ledger.add_comparisons(1);
      if (ok) {
        out.push_back(static_cast<Word>(k2));
      }
    }
    return out;
  }

 private:
  MiddleKind kind_;
  unsigned n_;
  std::uint64_t public_seed_;
  std::vector<std::vector<Word>> cache_;
};

// S_(k,k1) = {(E1_k(m_i ^ k1), D2_k(c_i ^ k1))}.
SitmTarget ele_target(const OracleHandle& handle, const std::vector<PlainCipherPair>& data) {
  const ToyCipher e1 = handle.cipher(1);
  const ToyCipher e2 = handle.cipher(2);
  const unsigned n = handle.n();
  SitmTarget target;
  target.width = handle.kappa() + n;
  target.t = data.size();
  target.build_cost = {0, 2 * data.size(), 0};
  target.pairs = [e1, e2, n, data](std::uint64_t key) {
    const auto k = static_cast<Word>(key >> n);
    const Word k1 = static_cast<Word>(key) & low_mask(n);
    const auto ks1 = e1.schedule(k);
    const auto ks2 = e2.schedule(k);
    PairSet s(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      s[i] = {e1.encrypt(ks1, data[i].m ^ k1), e2.decrypt(ks2, data[i].c ^ k1)};
    }
    return s;
  };
  return target;
}

unsigned mirror_q1_t(unsigned n) {
  // Smallest t with t^2 >= 2^(n+1), i.e. ceil(2^((n+1)/2)).
  const std::uint64_t target = std::uint64_t{1} << (n + 1);
  std::uint64_t t = 1;
  while (t * t < target) {
    ++t;
  }
  return static_cast<unsigned>(t);
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  for (const auto& [k, name] : kBackendNames) {
    if (k == b) {
      return name;
    }
  }
  return "?";
}

std::optional<Backend> parse_backend(std::string_view name) noexcept {
  for (const auto& [k, n] : kBackendNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

AttackReport qcf_mitm_2kte(OracleHandle& handle, const AttackOptions& opts) {
  const auto pair = build_fg_2kte(handle, opts.t);
  return qcf_mitm(twokte_id(handle, AttackId::QcfMitm2kte, AttackId::QcfMitmG2kte), handle, opts, pair,
                  [](std::uint64_t x, std::uint64_t y) { return KeyTuple{{static_cast<Word>(x), static_cast<Word>(y)}}; });
}

AttackReport grover_mitm_2kte(OracleHandle& handle, const AttackOptions& opts) {
  const auto pair = build_fg_2kte(handle, opts.t);
  AttackId id = twokte_id(handle, AttackId::GroverMitm2kte, AttackId::GroverMitmG2kte);
  if (id == AttackId::GroverMitm2kte && opts.r.value_or(1) > 1) {
    id = AttackId::TradeoffMitm2kte;
  }
  const std::uint64_t r = opts.r.value_or(default_r(id, handle.kappa(), handle.n()));
  return table_mitm(id, handle, opts, pair, r,
                    [](std::uint64_t x, std::uint64_t y) { return KeyTuple{{static_cast<Word>(x), static_cast<Word>(y)}}; });
}

AttackReport mitm_3xce_q2_qcf(OracleHandle& handle, const AttackOptions& opts) {
  const auto pair = build_fg_3xce(handle, opts.t);
  const unsigned n = handle.n();
  return qcf_mitm(AttackId::Q2Qcf3xce, handle, opts, pair,
                  [n](std::uint64_t x, std::uint64_t y) { return split_3xce(x, y, n); });
}

AttackReport mitm_3xce_q2_grover(OracleHandle& handle, const AttackOptions& opts) {
  const auto pair = build_fg_3xce(handle, opts.t);
  const unsigned n = handle.n();
  const AttackId id = opts.r.value_or(1) > 1 ? AttackId::Q2Tradeoff3xce : AttackId::Q2Grover3xce;
  const std::uint64_t r = opts.r.value_or(1);
  return table_mitm(id, handle, opts, pair, r, [n](std::uint64_t x, std::uint64_t y) { return split_3xce(x, y, n); });
}

AttackReport mitm_3xce_q1(OracleHandle& handle, const AttackOptions& opts) {
  auto& ledger = handle.ledger();
  const unsigned n = handle.n();
  const unsigned t = opts.t.value_or(default_t_3xce(handle.kappa(), n));
  AttackReport rep = start_report(AttackId::Q1Mitm3xce, handle, opts, t, 1);
  if (handle.config().scheme != Scheme::ThreeXorCascade) {
    throw ParameterError("3xce-q1-mitm needs a 3xce instance");
  }
  Rng rng(opts.seed);
  const ToyCipher e1 = handle.cipher(1);
  const ToyCipher e2 = handle.cipher(2);
  std::vector<Word> used;
  for (unsigned attempt = 0; attempt <= opts.retry_cap; ++attempt) {
    ++rep.attempts;
    const auto data = collect_pairs(handle, t, rng, used);
    for (const auto& p : data) {
      used.push_back(p.m);
    }
    const auto check = collect_pairs(handle, 2, rng, used);
    for (const auto& p : check) {
      used.push_back(p.m);
    }
    KeySearch search(handle.kappa() + n, predicate_F_delta(e1, e2, data), opts, ledger, rng);
    while (const auto key = search.next(rep)) {
      ledger.add_cipher_evals(2);
      const Word k2 = delta_first(e1, e2, data[0], *key);
      const KeyTuple guess = split_3xce(*key, k2, n);
      if (verify_guess(handle, guess, check)) {
        rep.success = true;
        rep.recovered = guess;
        return finish(rep, ledger);
      }
      ++rep.candidates_rejected;
    }
    if ((used.size() + t + 2) > (std::size_t{1} << n)) {
      break;
    }
  }
  rep.failure = "verification failed after " + std::to_string(rep.attempts) + " data collections";
  return finish(rep, ledger);
}

std::optional<std::uint64_t> sitm_generic(const SitmTarget& target, const Distinguisher& distinguisher,
                                          CostLedger& ledger, const AttackOptions& opts,
                                          const std::function<bool(std::uint64_t)>& accept, AttackReport* report) {
  AttackReport scratch;
  AttackReport& rep = report ? *report : scratch;
  Rng rng(derive_seed(opts.seed, 0x5171));
  KeyPredicate pred;
  pred.cost = target.build_cost;
  pred.cost.comparisons += distinguisher.cost_T(target.t);
  pred.test = [&target, &distinguisher](std::uint64_t x) { return distinguisher.decide(target.pairs(x)); };
  KeySearch search(target.width, std::move(pred), opts, ledger, rng);
  while (const auto key = search.next(rep)) {
    if (accept(*key)) {
      return key;
    }
    ++rep.candidates_rejected;
  }
  return std::nullopt;
}

AttackReport sitm_3xce(OracleHandle& handle, const AttackOptions& opts) {
  auto& ledger = handle.ledger();
  const unsigned n = handle.n();
  const unsigned t = opts.t.value_or(default_t_3xce(handle.kappa(), n));
  AttackReport rep = start_report(AttackId::Sitm3xce, handle, opts, t, 1);
  if (handle.config().scheme != Scheme::ThreeXorCascade) {
    throw ParameterError("sitm-3xce needs a 3xce instance");
  }
  Rng rng(opts.seed);
  const auto data = collect_pairs(handle, t, rng);
  const auto check = collect_pairs(handle, 2, rng, plaintexts_of(data));
  rep.attempts = 1;
  const auto target = ele_target(handle, data);
  const auto dist = xor_difference_distinguisher(n);
  const auto found = sitm_generic(
      target, dist, ledger, opts,
      [&](std::uint64_t key) {
        ledger.add_cipher_evals(target.build_cost.cipher_evals);
        const auto k2 = dist.constant(target.pairs(key));
        if (!k2) {
          return false;
        }
        const KeyTuple guess = split_3xce(key, *k2, n);
        if (!verify_guess(handle, guess, check)) {
          return false;
        }
        rep.recovered = guess;
        return true;
      },
      &rep);
  rep.success = found.has_value();
  return finish(rep, ledger);
}

AttackReport sitm_karc(OracleHandle& handle, const AttackOptions& opts) {
  auto& ledger = handle.ledger();
  const unsigned n = handle.n();
  const unsigned t = opts.t.value_or(default_t_3xce(handle.kappa(), n));
  AttackReport rep = start_report(AttackId::SitmKarc, handle, opts, t, 1);
  if (handle.config().scheme != Scheme::Karc) {
    throw ParameterError("sitm-karc needs a karc instance");
  }
  Rng rng(opts.seed);
  const auto data = collect_pairs(handle, t, rng);
  const auto check = collect_pairs(handle, 2, rng, plaintexts_of(data));
  rep.attempts = 1;

  const ToyCipher e = handle.cipher(1);
  const Word alpha = karc_alpha(handle.kappa());
  const LinearOps lin(n);
  SitmTarget target;
  target.width = handle.kappa() + n;
  target.t = t;
  target.build_cost = {0, 2 * std::uint64_t{t}, 0};
  target.pairs = [e, alpha, lin, n, &data](std::uint64_t key) {
    const auto k = static_cast<Word>(key >> n);
    const Word k1 = static_cast<Word>(key) & low_mask(n);
    const auto ks = e.schedule(k);
    const auto ks_alpha = e.schedule(k ^ alpha);
    PairSet s(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      s[i] = {e.encrypt(ks, data[i].m ^ k1), e.encrypt(ks_alpha, data[i].c ^ lin.sigma(k1))};
    }
    return s;
  };
  const auto dist = reflection_distinguisher(n);
  const auto mix = [lin](Word z) { return lin.reflect(z) ^ lin.sigma(z); };
  const auto found = sitm_generic(
      target, dist, ledger, opts,
      [&](std::uint64_t key) {
        ledger.add_cipher_evals(target.build_cost.cipher_evals);
        const auto constant = dist.constant(target.pairs(key));
        if (!constant) {
          return false;
        }
        // b ^ R(a) = R(k2) ^ sigma(k2); the map is singular, so any preimage
        // gives an equivalent key.
        const auto k2 = solve_linear(mix, n, *constant);
        if (!k2) {
          return false;
        }
        const KeyTuple guess = split_3xce(key, *k2, n);
        if (!verify_guess(handle, guess, check)) {
          return false;
        }
        rep.recovered = guess;
        return true;
      },
      &rep);
  rep.success = found.has_value();
  return finish(rep, ledger);
}

AttackReport mirror_slide_sitm_q1(OracleHandle& handle, const AttackOptions& opts) {
  auto& ledger = handle.ledger();
  const auto& cfg = handle.config();
  const unsigned n = handle.n();
  const unsigned t = opts.t.value_or(mirror_q1_t(n));
  AttackReport rep = start_report(AttackId::MirrorSlideQ1, handle, opts, t, 1);
  const auto kind = effective_middle(cfg);
  if (!kind || (*kind != MiddleKind::Xor && *kind != MiddleKind::RandomInvolution)) {
    throw ParameterError("mirror-slide-q1 needs an involution middle layer");
  }
  Rng rng(opts.seed);
  const auto data = collect_pairs(handle, t, rng);
  const auto check = collect_pairs(handle, 2, rng, plaintexts_of(data));
  rep.attempts = 1;
  const auto target = ele_target(handle, data);
  const auto dist = mirror_pair_distinguisher(n);
  MiddleCompleter completer(*kind, n, cfg.public_seed);
  const auto found = sitm_generic(
      target, dist, ledger, opts,
      [&](std::uint64_t key) {
        ledger.add_cipher_evals(target.build_cost.cipher_evals);
        const auto s = target.pairs(key);
        for (const auto k2 : completer.solve(s, ledger)) {
          const KeyTuple guess = split_3xce(key, k2, n);
          if (verify_guess(handle, guess, check)) {
            rep.recovered = guess;
            return true;
          }
        }
        return false;
      },
      &rep);
  rep.success = found.has_value();
  if (!found) {
    rep.failure = "no candidate survived; the data may hold no mirror slid pair";
  }
  return finish(rep, ledger);
}

AttackReport mirror_slide_sitm_q2(OracleHandle& handle, const AttackOptions& opts) {
  auto& ledger = handle.ledger();
  const auto& cfg = handle.config();
  const unsigned n = handle.n();
  const unsigned t = opts.t.value_or(default_t_3xce(handle.kappa(), n));
  const auto kind = effective_middle(cfg);
  const bool twisted = kind == MiddleKind::PTwistedInvolution;
  AttackReport rep =
      start_report(twisted ? AttackId::MirrorSlideQ2P : AttackId::MirrorSlideQ2, handle, opts, t, 1);
  if (!kind || *kind == MiddleKind::ReflectionAffine || cfg.scheme == Scheme::Karc || cfg.scheme == Scheme::GenericEle) {
    throw ParameterError("mirror-slide-q2 needs a 3xce-style instance with an (optionally P-twisted) involution");
  }
  const std::uint64_t domain = std::uint64_t{1} << n;
  if (t >= domain) {
    throw ParameterError("t = " + std::to_string(t) + " does not fit in n bits");
  }
  Rng rng(opts.seed);
  const ToyCipher e1 = handle.cipher(1);
  const ToyCipher e2 = handle.cipher(2);
  const auto dist = pointwise_distinguisher(n, twisted ? handle.public_twist() : nullptr);
  MiddleCompleter completer(*kind, n, cfg.public_seed);
  OracleHandle* h = &handle;

  for (unsigned attempt = 0; attempt <= opts.retry_cap; ++attempt) {
    ++rep.attempts;
    const Word offset = static_cast<Word>(uniform_below(rng, domain));
    std::vector<Word> inner(t);
    for (unsigned i = 0; i < t; ++i) {
      inner[i] = static_cast<Word>((offset + i + 1) & (domain - 1));
    }
    const auto check = collect_pairs(handle, 2, rng);
    SitmTarget target;
    target.width = handle.kappa() + n;
    target.t = t;
    target.build_cost = {2 * std::uint64_t{t}, 4 * std::uint64_t{t}, 0};
    target.pairs = [h, e1, e2, n, inner](std::uint64_t key) {
      const auto k = static_cast<Word>(key >> n);
      const Word k1 = static_cast<Word>(key) & low_mask(n);
      const auto ks1 = e1.schedule(k);
      const auto ks2 = e2.schedule(k);
      PairSet s(inner.size());
      for (std::size_t j = 0; j < inner.size(); ++j) {
        const Word i = inner[j];
        s[j].a = e2.decrypt(ks2, h->encrypt(e1.decrypt(ks1, i) ^ k1) ^ k1);
        s[j].b = e1.encrypt(ks1, h->decrypt(e2.encrypt(ks2, i) ^ k1) ^ k1);
      }
      return s;
    };
    AttackOptions inner_opts = opts;
    inner_opts.seed = rng();
    const auto found = sitm_generic(
        target, dist, ledger, inner_opts,
        [&](std::uint64_t key) {
          ledger.add_cipher_evals(target.build_cost.cipher_evals);
          const auto s = target.pairs(key);
          // a_i = L(i) under the true keys.
          PairSet constraints(t);
          for (unsigned j = 0; j < t; ++j) {
            constraints[j] = {inner[j], s[j].a};
          }
          for (const auto k2 : completer.solve(constraints, ledger)) {
            const KeyTuple guess = split_3xce(key, k2, n);
            if (verify_guess(handle, guess, check)) {
              rep.recovered = guess;
              return true;
            }
          }
          return false;
        },
        &rep);
    if (found) {
      rep.success = true;
      return finish(rep, ledger);
    }
  }
  rep.failure = "verification failed after " + std::to_string(rep.attempts) + " offset choices";
  return finish(rep, ledger);
}

Scheme default_scheme(AttackId id) noexcept {
  switch (id) {
    case AttackId::QcfMitm2kte:
    case AttackId::GroverMitm2kte:
    case AttackId::TradeoffMitm2kte:
      return Scheme::TwoKeyTriple;
    case AttackId::QcfMitmG2kte:
    case AttackId::GroverMitmG2kte:
      return Scheme::GeneralizedTwoKeyTriple;
    case AttackId::SitmKarc:
      return Scheme::Karc;
    case AttackId::MirrorSlideQ1:
    case AttackId::MirrorSlideQ2:
    case AttackId::MirrorSlideQ2P:
      return Scheme::TildeThreeXorCascade;
    default:
      return Scheme::ThreeXorCascade;
  }
}

MiddleKind default_middle(AttackId id) noexcept {
  switch (id) {
    case AttackId::MirrorSlideQ1:
    case AttackId::MirrorSlideQ2:
      return MiddleKind::RandomInvolution;
    case AttackId::MirrorSlideQ2P:
      return MiddleKind::PTwistedInvolution;
    default:
      return MiddleKind::Xor;
  }
}

AccessModel required_model(AttackId id) noexcept {
  switch (id) {
    case AttackId::Q1Mitm3xce:
    case AttackId::Sitm3xce:
    case AttackId::SitmKarc:
    case AttackId::MirrorSlideQ1:
      return AccessModel::Q1;
    default:
      return AccessModel::Q2;
  }
}

namespace {

[[noreturn]] void reject(const std::string& fields, const std::string& why) {
  throw ParameterError("invalid combination of " + fields + ": " + why);
}

bool uses_table(AttackId id) {
  return id == AttackId::GroverMitm2kte || id == AttackId::TradeoffMitm2kte || id == AttackId::GroverMitmG2kte ||
         id == AttackId::Q2Grover3xce || id == AttackId::Q2Tradeoff3xce;
}

bool uses_grover(AttackId id) {
  return id != AttackId::QcfMitm2kte && id != AttackId::QcfMitmG2kte && id != AttackId::Q2Qcf3xce;
}

bool is_2kte_attack(AttackId id) {
  return id == AttackId::QcfMitm2kte || id == AttackId::GroverMitm2kte || id == AttackId::TradeoffMitm2kte;
}

bool is_g2kte_attack(AttackId id) { return id == AttackId::QcfMitmG2kte || id == AttackId::GroverMitmG2kte; }

unsigned search_width(AttackId id, unsigned kappa, unsigned n) {
  return is_2kte_attack(id) || is_g2kte_attack(id) ? kappa : kappa + n;
}

}  // namespace

void validate(const RunConfig& cfg) {
  const std::string attack(attack_name(cfg.attack));
  (void)CipherParams(cfg.kappa, cfg.n, 0);
  const Scheme scheme = cfg.scheme.value_or(default_scheme(cfg.attack));
  const std::string sname(scheme_name(scheme));

  bool scheme_ok = false;
  if (is_2kte_attack(cfg.attack)) {
    scheme_ok = scheme == Scheme::TwoKeyTriple || scheme == Scheme::TwoKeyTripleEde;
  } else if (is_g2kte_attack(cfg.attack)) {
    scheme_ok = scheme == Scheme::GeneralizedTwoKeyTriple;
  } else if (cfg.attack == AttackId::SitmKarc) {
    scheme_ok = scheme == Scheme::Karc;
  } else if (cfg.attack == AttackId::MirrorSlideQ1 || cfg.attack == AttackId::MirrorSlideQ2 ||
             cfg.attack == AttackId::MirrorSlideQ2P) {
    scheme_ok = scheme == Scheme::ThreeXorCascade || scheme == Scheme::TildeThreeXorCascade;
  } else {
    scheme_ok = scheme == Scheme::ThreeXorCascade;
  }
  if (!scheme_ok) {
    reject("attack and scheme", "attack " + attack + " does not apply to scheme " + sname);
  }

  if (cfg.middle && scheme != Scheme::TildeThreeXorCascade && scheme != Scheme::GenericEle) {
    reject("middle and scheme", "a middle layer kind applies only to 3xce-tilde and ele, not " + sname);
  }
  if (scheme == Scheme::TildeThreeXorCascade) {
    const MiddleKind mid = cfg.middle.value_or(default_middle(cfg.attack));
    const std::string mname(middle_kind_name(mid));
    if (cfg.attack == AttackId::MirrorSlideQ2P && mid != MiddleKind::PTwistedInvolution) {
      reject("attack and middle", attack + " needs the p-twisted-involution middle layer, got " + mname);
    }
    if ((cfg.attack == AttackId::MirrorSlideQ1 || cfg.attack == AttackId::MirrorSlideQ2) &&
        mid != MiddleKind::Xor && mid != MiddleKind::RandomInvolution) {
      reject("attack and middle", attack + " needs an involution middle layer (xor or random-involution), got " + mname);
    }
  } else if (cfg.attack == AttackId::MirrorSlideQ2P) {
    reject("attack and scheme", attack + " needs scheme 3xce-tilde with a p-twisted-involution middle layer");
  }
  if (cfg.share_ciphers && scheme != Scheme::ThreeXorCascade && scheme != Scheme::TildeThreeXorCascade &&
      scheme != Scheme::GenericEle) {
    reject("share_ciphers and scheme", "cipher sharing applies only to the 3xce family, not " + sname);
  }

  const AccessModel need = required_model(cfg.attack);
  if (cfg.model && *cfg.model == AccessModel::Q1 && need == AccessModel::Q2) {
    reject("attack and model", attack + " needs superposition queries (Q2) but model is Q1");
  }

  if (cfg.r) {
    if (!uses_table(cfg.attack)) {
      reject("r and attack", "r applies only to table-based attacks, not " + attack);
    }
    const unsigned y_bits = (is_2kte_attack(cfg.attack) || is_g2kte_attack(cfg.attack)) ? cfg.kappa : cfg.n;
    if (!is_power_of_two(*cfg.r) || *cfg.r > (std::uint64_t{1} << y_bits)) {
      reject("r and kappa/n", "r must be a power of two in [1, 2^" + std::to_string(y_bits) + "]");
    }
  }
  if (cfg.t && *cfg.t < 2) {
    reject("t", "t must be at least 2");
  }
  if (cfg.backend == Backend::Statevector && uses_grover(cfg.attack)) {
    const unsigned w = search_width(cfg.attack, cfg.kappa, cfg.n);
    if (w > kMaxStatevectorWidth) {
      reject("backend and kappa/n", "statevector search width " + std::to_string(w) + " exceeds " +
                                        std::to_string(kMaxStatevectorWidth) + "; use the idealized backend");
    }
  }
}

SchemeConfig scheme_config(const RunConfig& cfg) {
  SchemeConfig sc;
  sc.scheme = cfg.scheme.value_or(default_scheme(cfg.attack));
  sc.kappa = cfg.kappa;
  sc.n = cfg.n;
  sc.cipher_base_id = cfg.cipher_id.value_or(derive_seed(cfg.seed, 0x63697068));
  sc.share_ciphers = cfg.share_ciphers;
  sc.middle = cfg.middle.value_or(default_middle(cfg.attack));
  sc.public_seed = derive_seed(sc.cipher_base_id, 0x7075626c);
  return sc;
}

ConstructionInstance make_instance(const RunConfig& cfg) {
  return ConstructionInstance::random(scheme_config(cfg), derive_seed(cfg.seed, 0x696e7374));
}

bool confirm_keys(const ConstructionInstance& truth, const KeyTuple& guess, std::uint64_t seed, unsigned count) {
  const auto candidate = truth.with_keys(guess);
  Rng rng(seed);
  const std::uint64_t domain = std::uint64_t{1} << truth.n();
  for (unsigned i = 0; i < count; ++i) {
    const auto m = static_cast<Word>(uniform_below(rng, domain));
    if (candidate.encrypt(m) != truth.encrypt(m)) {
      return false;
    }
  }
  return true;
}

AttackReport run_attack(const RunConfig& cfg) {
  validate(cfg);
  const auto instance = make_instance(cfg);
  CostLedger ledger;
  OracleHandle handle(instance, cfg.model.value_or(required_model(cfg.attack)), ledger);
  AttackOptions opts;
  opts.backend = cfg.backend;
  opts.r = cfg.r;
  opts.t = cfg.t;
  opts.seed = derive_seed(cfg.seed, 0x61747461);

  AttackReport rep;
  switch (cfg.attack) {
    case AttackId::QcfMitm2kte:
    case AttackId::QcfMitmG2kte:
      rep = qcf_mitm_2kte(handle, opts);
      break;
    case AttackId::GroverMitm2kte:
    case AttackId::GroverMitmG2kte:
      rep = grover_mitm_2kte(handle, opts);
      break;
    case AttackId::TradeoffMitm2kte:
      if (!opts.r) {
        opts.r = default_r(cfg.attack, cfg.kappa, cfg.n);
      }
      rep = table_mitm(AttackId::TradeoffMitm2kte, handle, opts, build_fg_2kte(handle, opts.t), *opts.r,
                       [](std::uint64_t x, std::uint64_t y) {
                         return KeyTuple{{static_cast<Word>(x), static_cast<Word>(y)}};
                       });
      break;
    case AttackId::Q2Qcf3xce:
      rep = mitm_3xce_q2_qcf(handle, opts);
      break;
    case AttackId::Q2Grover3xce:
    case AttackId::Q2Tradeoff3xce: {
      const std::uint64_t r = opts.r.value_or(default_r(cfg.attack, cfg.kappa, cfg.n));
      const unsigned n = cfg.n;
      rep = table_mitm(cfg.attack, handle, opts, build_fg_3xce(handle, opts.t), r,
                       [n](std::uint64_t x, std::uint64_t y) { return split_3xce(x, y, n); });
      break;
    }
    case AttackId::Q1Mitm3xce:
      rep = mitm_3xce_q1(handle, opts);
      break;
    case AttackId::Sitm3xce:
      rep = sitm_3xce(handle, opts);
      break;
    case AttackId::SitmKarc:
      rep = sitm_karc(handle, opts);
      break;
    case AttackId::MirrorSlideQ1:
      rep = mirror_slide_sitm_q1(handle, opts);
      break;
    case AttackId::MirrorSlideQ2:
    case AttackId::MirrorSlideQ2P:
      rep = mirror_slide_sitm_q2(handle, opts);
      break;
  }
  rep.attack = cfg.attack;
  rep.seed = cfg.seed;
  if (rep.success && rep.recovered) {
    if (!confirm_keys(instance, *rep.recovered, derive_seed(cfg.seed, 0x636f6e66))) {
      rep.success = false;
      rep.failure = "recovered keys disagree with the instance on fresh plaintexts";
    }
  }
  return rep;
}

}  // namespace kleq
