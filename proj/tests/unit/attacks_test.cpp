#include <gtest/gtest.h>

#include <string>

#include "kleq/attacks.hpp"

using namespace kleq;

namespace {

RunConfig run(AttackId id, unsigned kappa, unsigned n, std::uint64_t seed) {
  RunConfig cfg;
  cfg.attack = id;
  cfg.kappa = kappa;
  cfg.n = n;
  cfg.seed = seed;
  return cfg;
}

std::string validate_message(const RunConfig& cfg) {
  try {
    validate(cfg);
  } catch (const ParameterError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Attacks, EveryAttackSucceedsOnASmallInstance) {
  for (const auto id : kAllAttacks) {
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto rep = run_attack(run(id, 8, 8, seed));
      EXPECT_EQ(rep.attack, id);
      EXPECT_EQ(rep.seed, seed);
      if (rep.success) {
        ASSERT_TRUE(rep.recovered.has_value());
        EXPECT_EQ(rep.recovered->parts.size(), rep.key_slots.size());
        EXPECT_TRUE(rep.failure.empty());
        ++wins;
      } else {
        EXPECT_FALSE(rep.failure.empty());
      }
    }
    // Mirror-slide Q1 only succeeds when a mirror pair exists in its data.
    EXPECT_GE(wins, id == AttackId::MirrorSlideQ1 ? 1 : 4) << attack_name(id);
  }
}

TEST(Attacks, RecoveredKeysMatchInstance2kte) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cfg = run(AttackId::QcfMitm2kte, 10, 10, seed);
    const auto rep = run_attack(cfg);
    ASSERT_TRUE(rep.success);
    EXPECT_TRUE(confirm_keys(make_instance(cfg), *rep.recovered, 99, 16));
    EXPECT_EQ(rep.predicted.time_exponent, Rational(20, 3));
    EXPECT_EQ(rep.regime, ClawRegime::Balanced);
  }
}

TEST(Attacks, InjectedClawIsRejected) {
  SchemeConfig sc;
  sc.kappa = 8;
  sc.n = 8;
  const auto inst = ConstructionInstance::random(sc, 5);
  const Word k1 = inst.secret_keys().parts[0];
  const Word k2 = inst.secret_keys().parts[1];
  CostLedger ledger;
  OracleHandle h(inst, AccessModel::Q2, ledger);
  AttackOptions opts;
  opts.injected_claw = std::pair<std::uint64_t, std::uint64_t>{k1 ^ 1, k2 ^ 1};
  const auto rep = qcf_mitm_2kte(h, opts);
  ASSERT_TRUE(rep.success);
  EXPECT_GE(rep.candidates_rejected, 1u);
  EXPECT_TRUE(confirm_keys(inst, *rep.recovered, 1, 16));
}

TEST(Attacks, GroverTableCounters) {
  const auto rep = run_attack(run(AttackId::GroverMitm2kte, 12, 12, 3));
  ASSERT_TRUE(rep.success);
  EXPECT_EQ(rep.iterations_per_call, 51u);
  EXPECT_EQ(rep.ledger.qram_entries, 4096u);
  EXPECT_EQ(rep.sub_table_calls, 1u);
  EXPECT_EQ(rep.preprocessing.cipher_evals, 4096u * rep.t);
  EXPECT_EQ(rep.ledger.grover_iterations, rep.search_calls * 51u);

  auto cfg = run(AttackId::TradeoffMitm2kte, 12, 12, 3);
  cfg.r = 4;
  const auto tr = run_attack(cfg);
  ASSERT_TRUE(tr.success);
  EXPECT_EQ(tr.ledger.qram_entries, 1024u);
  EXPECT_GE(tr.sub_table_calls, 1u);
  EXPECT_LE(tr.sub_table_calls, 4u);
  EXPECT_EQ(tr.r, 4u);
}

TEST(Attacks, StatevectorBackendAtKappa10) {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto cfg = run(AttackId::GroverMitm2kte, 10, 10, seed);
    cfg.backend = Backend::Statevector;
    const auto rep = run_attack(cfg);
    EXPECT_EQ(rep.backend, Backend::Statevector);
    EXPECT_EQ(rep.iterations_per_call, 26u);
    wins += rep.success ? 1 : 0;
  }
  EXPECT_GE(wins, 9);
}

TEST(Attacks, Q1AttacksMakeNoSuperpositionQueries) {
  for (const auto id : {AttackId::Q1Mitm3xce, AttackId::Sitm3xce, AttackId::SitmKarc, AttackId::MirrorSlideQ1}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto rep = run_attack(run(id, 8, 8, seed));
      EXPECT_EQ(rep.model, AccessModel::Q1);
      EXPECT_EQ(rep.ledger.construction_queries_superposition, 0u) << attack_name(id);
      EXPECT_EQ(rep.ledger.qram_entries, 0u) << attack_name(id);
      EXPECT_GT(rep.ledger.construction_queries_classical, 0u);
    }
  }
}

TEST(Attacks, Q2AttacksUseSuperpositionQueries) {
  for (const auto id : {AttackId::QcfMitm2kte, AttackId::Q2Grover3xce, AttackId::MirrorSlideQ2}) {
    const auto rep = run_attack(run(id, 8, 8, 1));
    EXPECT_EQ(rep.model, AccessModel::Q2);
    EXPECT_GT(rep.ledger.construction_queries_superposition, 0u) << attack_name(id);
  }
}

TEST(Attacks, PredictionMatchesLedgerPredict) {
  for (const auto id : kAllAttacks) {
    const auto rep = run_attack(run(id, 8, 8, 2));
    const bool partitioned = id == AttackId::TradeoffMitm2kte || id == AttackId::Q2Tradeoff3xce;
    if (!partitioned) {
      EXPECT_EQ(rep.predicted, ledger_predict(id, 8, 8)) << attack_name(id);
    }
    EXPECT_EQ(rep.predicted.worse_than_bruteforce,
              rep.predicted.time_exponent >= rep.predicted.bruteforce_exponent);
  }
  auto cfg = run(AttackId::TradeoffMitm2kte, 12, 12, 0);
  cfg.r = 4;
  EXPECT_EQ(run_attack(cfg).predicted, ledger_predict(AttackId::TradeoffMitm2kte, 12, 12, Rational(2)));
}

TEST(Attacks, Q1MitmCosts) {
  const auto rep = run_attack(run(AttackId::Q1Mitm3xce, 8, 8, 42));
  ASSERT_TRUE(rep.success);
  EXPECT_EQ(rep.iterations_per_call, 202u);
  EXPECT_EQ(rep.predicted.time_exponent, Rational(8));
  EXPECT_EQ(rep.t, 4u);
}

TEST(Attacks, MirrorQ1ReportsWorseThanBruteForce) {
  const auto rep = run_attack(run(AttackId::MirrorSlideQ1, 8, 8, 0));
  EXPECT_EQ(rep.t, 23u);
  EXPECT_TRUE(rep.predicted.worse_than_bruteforce);
}

TEST(SitmGeneric, DegenerateSingleKeySpace) {
  SitmTarget target;
  target.width = 0;
  target.t = 2;
  target.pairs = [](std::uint64_t) { return PairSet{{1, 2}, {3, 0}}; };
  target.build_cost = {0, 4, 0};
  CostLedger ledger;
  AttackOptions opts;
  const auto found = sitm_generic(target, xor_difference_distinguisher(4), ledger, opts,
                                  [](std::uint64_t) { return true; });
  ASSERT_TRUE(found);
  EXPECT_EQ(*found, 0u);
  EXPECT_EQ(ledger.online().grover_iterations, 1u);

  target.pairs = [](std::uint64_t) { return PairSet{{1, 2}, {3, 1}}; };
  EXPECT_FALSE(sitm_generic(target, xor_difference_distinguisher(4), ledger, opts, [](std::uint64_t) { return true; }));
}

TEST(SitmGeneric, ContinuesPastRejectedCandidates) {
  SitmTarget target;
  target.width = 6;
  target.t = 2;
  target.pairs = [](std::uint64_t x) {
    return x % 8 == 5 ? PairSet{{0, 1}, {2, 3}} : PairSet{{0, 1}, {2, 2}};
  };
  CostLedger ledger;
  AttackReport rep;
  const auto found = sitm_generic(target, xor_difference_distinguisher(6), ledger, {},
                                  [](std::uint64_t x) { return x == 29; }, &rep);
  ASSERT_TRUE(found);
  EXPECT_EQ(*found, 29u);
  EXPECT_EQ(rep.candidates_rejected, 3u);
}

TEST(Validate, RejectsBadCombinations) {
  auto cfg = run(AttackId::SitmKarc, 8, 8, 0);
  cfg.scheme = Scheme::ThreeXorCascade;
  EXPECT_NE(validate_message(cfg).find("scheme"), std::string::npos);

  cfg = run(AttackId::QcfMitm2kte, 8, 8, 0);
  cfg.model = AccessModel::Q1;
  EXPECT_NE(validate_message(cfg).find("model"), std::string::npos);

  cfg = run(AttackId::QcfMitm2kte, 8, 8, 0);
  cfg.r = 4;
  EXPECT_NE(validate_message(cfg).find("r and attack"), std::string::npos);

  cfg = run(AttackId::TradeoffMitm2kte, 8, 8, 0);
  cfg.r = 3;
  EXPECT_NE(validate_message(cfg).find("power of two"), std::string::npos);
  cfg.r = 512;
  EXPECT_FALSE(validate_message(cfg).empty());

  cfg = run(AttackId::Q1Mitm3xce, 8, 8, 0);
  cfg.middle = MiddleKind::RandomInvolution;
  EXPECT_NE(validate_message(cfg).find("middle"), std::string::npos);

  cfg = run(AttackId::MirrorSlideQ2P, 8, 8, 0);
  cfg.middle = MiddleKind::RandomInvolution;
  EXPECT_NE(validate_message(cfg).find("p-twisted"), std::string::npos);

  cfg = run(AttackId::QcfMitm2kte, 8, 8, 0);
  cfg.share_ciphers = true;
  EXPECT_NE(validate_message(cfg).find("share_ciphers"), std::string::npos);

  cfg = run(AttackId::Q1Mitm3xce, 16, 16, 0);
  cfg.backend = Backend::Statevector;
  EXPECT_NE(validate_message(cfg).find("statevector"), std::string::npos);

  cfg = run(AttackId::Q1Mitm3xce, 8, 8, 0);
  cfg.t = 1;
  EXPECT_NE(validate_message(cfg).find("t must"), std::string::npos);

  EXPECT_THROW(validate(run(AttackId::QcfMitm2kte, 2, 8, 0)), ParameterError);
  EXPECT_TRUE(validate_message(run(AttackId::MirrorSlideQ2P, 8, 8, 0)).empty());
}

TEST(RunAttack, DeterministicPerSeed) {
  for (const auto id : {AttackId::Q1Mitm3xce, AttackId::MirrorSlideQ2, AttackId::TradeoffMitm2kte}) {
    const auto a = run_attack(run(id, 8, 8, 77));
    const auto b = run_attack(run(id, 8, 8, 77));
    EXPECT_EQ(a.recovered, b.recovered);
    EXPECT_EQ(a.ledger, b.ledger);
    EXPECT_EQ(a.success, b.success);
  }
}
