#include <gtest/gtest.h>

#include <algorithm>

#include "kleq/groundtruth.hpp"
#include "kleq/oracle.hpp"
#include "kleq/random.hpp"

using namespace kleq;

namespace {

SchemeConfig config(Scheme s, unsigned kappa, unsigned n, std::uint64_t base,
                    MiddleKind middle = MiddleKind::Xor) {
  SchemeConfig cfg;
  cfg.scheme = s;
  cfg.kappa = kappa;
  cfg.n = n;
  cfg.cipher_base_id = base;
  cfg.middle = middle;
  cfg.public_seed = derive_seed(base, 0x7075626c);
  return cfg;
}

std::vector<PlainCipherPair> data_for(const ConstructionInstance& inst, std::initializer_list<Word> ms) {
  std::vector<PlainCipherPair> out;
  for (const Word m : ms) {
    out.push_back({m, inst.encrypt(m)});
  }
  return out;
}

// m_j chosen so that the inner states satisfy u_i = v_j for the given i.
Word planted_partner(const ConstructionInstance& inst, Word mi) {
  const Word k = inst.secret_keys().parts[0];
  const Word k1 = inst.secret_keys().parts[1];
  const Word ui = inst.cipher(1).encrypt(k, mi ^ k1);
  return inst.decrypt(inst.cipher(2).encrypt(k, ui) ^ k1);
}

}  // namespace

TEST(BruteForce, UniqueKeyWithThreePairs) {
  int unique = 0;
  const int instances = 500;
  for (int i = 0; i < instances; ++i) {
    const auto inst = ConstructionInstance::random(config(Scheme::TwoKeyTriple, 8, 8, 100 + i), i);
    const auto keys = brute_force_keys(inst, data_for(inst, {11, 22, 33}));
    ASSERT_NE(std::find(keys.begin(), keys.end(), inst.secret_keys()), keys.end());
    unique += keys.size() == 1 ? 1 : 0;
  }
  EXPECT_GE(unique, instances * 99 / 100);
}

TEST(BruteForce, EmptyDataAcceptsEveryKey) {
  const auto inst = ConstructionInstance::random(config(Scheme::TwoKeyTriple, 4, 8, 1), 1);
  EXPECT_EQ(brute_force_keys(inst, {}).size(), 256u);
}

TEST(BruteForce, CorruptedDataLosesTrueKey) {
  const auto inst = ConstructionInstance::random(config(Scheme::ThreeXorCascade, 4, 6, 3), 3);
  auto data = data_for(inst, {1, 2, 3, 4});
  data[2].c ^= 1;
  const auto keys = brute_force_keys(inst, data);
  EXPECT_EQ(std::find(keys.begin(), keys.end(), inst.secret_keys()), keys.end());
}

TEST(BruteForce, WidthBudget) {
  const auto inst = ConstructionInstance::random(config(Scheme::ThreeXorCascade, 12, 8, 3), 3);
  EXPECT_THROW(brute_force_keys(inst, {}), ResourceError);
  EXPECT_THROW(brute_force_keys(inst, {}, 20), ResourceError);
}

TEST(BruteForce, ThreeXorTupleOrder) {
  const ConstructionInstance inst(config(Scheme::ThreeXorCascade, 4, 5, 9), KeyTuple{{0xA, 0x13, 0x07}});
  const auto keys = brute_force_keys(inst, data_for(inst, {0, 1, 2, 3, 4, 5}));
  EXPECT_NE(std::find(keys.begin(), keys.end(), inst.secret_keys()), keys.end());
}

TEST(EnumerateClaws, TrueClawAndSpuriousRate) {
  int spurious_instances = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = ConstructionInstance::random(config(Scheme::TwoKeyTriple, 8, 8, seed), seed);
    CostLedger ledger;
    OracleHandle h(inst, AccessModel::Q2, ledger);
    const auto claws = enumerate_claws(build_fg_2kte(h));
    const std::pair<std::uint64_t, std::uint64_t> truth{inst.secret_keys().parts[0], inst.secret_keys().parts[1]};
    ASSERT_NE(std::find(claws.begin(), claws.end(), truth), claws.end());
    spurious_instances += claws.size() > 1 ? 1 : 0;
  }
  // 2^16 key pairs x 2^-24 per pair: about 0.8 expected over 200 instances.
  EXPECT_LE(spurious_instances, 5);
}

TEST(EnumerateClaws, LongerDataGivesUniqueClaw) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = ConstructionInstance::random(config(Scheme::GeneralizedTwoKeyTriple, 8, 8, seed), seed);
    CostLedger ledger;
    OracleHandle h(inst, AccessModel::Q2, ledger);
    const auto claws = enumerate_claws(build_fg_2kte(h, 5u));
    ASSERT_EQ(claws.size(), 1u);
    EXPECT_EQ(claws[0].first, inst.secret_keys().parts[0]);
    EXPECT_EQ(claws[0].second, inst.secret_keys().parts[1]);
  }
}

TEST(EnumerateClaws, SideBudget) {
  const auto inst = ConstructionInstance::random(config(Scheme::ThreeXorCascade, 8, 8, 1), 1);
  CostLedger ledger;
  OracleHandle h(inst, AccessModel::Q2, ledger);
  EXPECT_THROW(enumerate_claws(build_fg_3xce(h)), ResourceError);
}

TEST(MirrorPairs, PlantedPairIsFoundBothWays) {
  for (const auto middle : {MiddleKind::Xor, MiddleKind::RandomInvolution, MiddleKind::PTwistedInvolution}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto inst =
          ConstructionInstance::random(config(Scheme::TildeThreeXorCascade, 8, 8, seed, middle), seed);
      const Word mi = 17;
      const Word mj = planted_partner(inst, mi);
      if (mj == mi) {
        continue;
      }
      const std::vector<Word> pts{mi, mj};
      const auto scan = enumerate_mirror_pairs(inst, pts);
      EXPECT_EQ(scan.violations, 0u);
      EXPECT_NE(std::find(scan.pairs.begin(), scan.pairs.end(), std::pair<std::size_t, std::size_t>{0, 1}),
                scan.pairs.end());
      if (middle != MiddleKind::PTwistedInvolution) {
        // An involution makes the relation symmetric.
        EXPECT_EQ(scan.pairs.size(), 2u) << middle_kind_name(middle);
      }
    }
  }
}

TEST(MirrorPairs, RandomPlaintextsNoViolations) {
  Rng rng(31);
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst =
        ConstructionInstance::random(config(Scheme::TildeThreeXorCascade, 8, 8, seed, MiddleKind::RandomInvolution),
                                     seed);
    std::vector<Word> pts;
    for (int i = 0; i < 23; ++i) {
      pts.push_back(static_cast<Word>(rng() & 0xff));
    }
    const auto scan = enumerate_mirror_pairs(inst, pts);
    EXPECT_EQ(scan.violations, 0u);
    total += scan.pairs.size();
  }
  EXPECT_GT(total, 0u);
}

TEST(MirrorPairs, NonInvolutionMiddleShowsViolations) {
  // Reflection-affine L(x) = R(x ^ k2) ^ sigma(k2) is not an involution, so
  // the implied relation generally fails.
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = ConstructionInstance::random(
        config(Scheme::TildeThreeXorCascade, 8, 8, seed, MiddleKind::ReflectionAffine), seed);
    const auto scan = enumerate_mirror_pairs(inst, std::vector<Word>{5, planted_partner(inst, 5)});
    violations += scan.violations;
  }
  EXPECT_GT(violations, 0u);
}

TEST(MirrorPairs, RejectsOtherSchemes) {
  const auto inst = ConstructionInstance::random(config(Scheme::Karc, 8, 8, 1), 1);
  EXPECT_THROW(enumerate_mirror_pairs(inst, std::vector<Word>{1, 2}), ParameterError);
}
