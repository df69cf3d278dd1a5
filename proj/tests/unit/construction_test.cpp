#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "kleq/construction.hpp"
#include "kleq/oracle.hpp"
#include "kleq/random.hpp"

using namespace kleq;

namespace {

SchemeConfig config(Scheme s, unsigned kappa = 8, unsigned n = 8, MiddleKind middle = MiddleKind::Xor) {
  SchemeConfig cfg;
  cfg.scheme = s;
  cfg.kappa = kappa;
  cfg.n = n;
  cfg.cipher_base_id = 17;
  cfg.middle = middle;
  return cfg;
}

const std::vector<SchemeConfig>& all_configs() {
  static const std::vector<SchemeConfig> cfgs = [] {
    std::vector<SchemeConfig> v{
        config(Scheme::TwoKeyTriple),
        config(Scheme::TwoKeyTripleEde),
        config(Scheme::GeneralizedTwoKeyTriple),
        config(Scheme::ThreeXorCascade),
        config(Scheme::Karc),
    };
    for (const auto m : {MiddleKind::Xor, MiddleKind::ReflectionAffine, MiddleKind::RandomInvolution,
                         MiddleKind::PTwistedInvolution}) {
      v.push_back(config(Scheme::TildeThreeXorCascade, 8, 8, m));
      v.push_back(config(Scheme::GenericEle, 8, 8, m));
    }
    auto shared = config(Scheme::ThreeXorCascade);
    shared.share_ciphers = true;
    v.push_back(shared);
    return v;
  }();
  return cfgs;
}

}  // namespace

TEST(Names, RoundTrip) {
  for (const auto s : {Scheme::TwoKeyTriple, Scheme::TwoKeyTripleEde, Scheme::GeneralizedTwoKeyTriple,
                       Scheme::ThreeXorCascade, Scheme::TildeThreeXorCascade, Scheme::Karc, Scheme::GenericEle}) {
    EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  }
  for (const auto m : {MiddleKind::Xor, MiddleKind::ReflectionAffine, MiddleKind::RandomInvolution,
                       MiddleKind::PTwistedInvolution}) {
    EXPECT_EQ(parse_middle_kind(middle_kind_name(m)), m);
  }
  EXPECT_FALSE(parse_scheme("des").has_value());
}

TEST(Construction, RoundTripExhaustiveEveryScheme) {
  for (const auto& cfg : all_configs()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto inst = ConstructionInstance::random(cfg, seed);
      std::set<Word> image;
      for (Word m = 0; m < 256; ++m) {
        const Word c = inst.encrypt(m);
        ASSERT_EQ(inst.decrypt(c), m) << scheme_name(cfg.scheme) << "/" << middle_kind_name(cfg.middle);
        image.insert(c);
      }
      ASSERT_EQ(image.size(), 256u);
    }
  }
}

TEST(Construction, KeyLayout) {
  const auto l2 = key_layout(config(Scheme::TwoKeyTriple, 12, 8));
  ASSERT_EQ(l2.size(), 2u);
  EXPECT_EQ(l2[0].name, "k1");
  EXPECT_EQ(l2[1].width, 12u);
  const auto l3 = key_layout(config(Scheme::ThreeXorCascade, 12, 8));
  ASSERT_EQ(l3.size(), 3u);
  EXPECT_EQ(l3[0].width, 12u);
  EXPECT_EQ(l3[1].width, 8u);
  EXPECT_EQ(l3[2].name, "k2");
}

TEST(Construction, RejectsMalformedKeys) {
  const auto cfg = config(Scheme::ThreeXorCascade);
  EXPECT_THROW(ConstructionInstance(cfg, KeyTuple{{1, 2}}), ParameterError);
  EXPECT_THROW(ConstructionInstance(cfg, KeyTuple{{1, 256, 2}}), ParameterError);
  const ConstructionInstance inst(cfg, KeyTuple{{1, 2, 3}});
  EXPECT_THROW(inst.encrypt(Block(0, 9)), ParameterError);
}

TEST(Construction, TwoKeyTripleComposition) {
  const ConstructionInstance inst(config(Scheme::TwoKeyTriple), KeyTuple{{0x31, 0xC4}});
  const auto& e = inst.cipher(1);
  for (Word m = 0; m < 256; ++m) {
    ASSERT_EQ(inst.encrypt(m), e.encrypt(0x31, e.encrypt(0xC4, e.encrypt(0x31, m))));
  }
  const ConstructionInstance ede(config(Scheme::TwoKeyTripleEde), KeyTuple{{0x31, 0xC4}});
  for (Word m = 0; m < 256; ++m) {
    ASSERT_EQ(ede.encrypt(m), e.encrypt(0x31, e.decrypt(0xC4, e.encrypt(0x31, m))));
  }
}

TEST(Construction, G2kteUsesThreeIndependentCiphers) {
  const ConstructionInstance inst(config(Scheme::GeneralizedTwoKeyTriple), KeyTuple{{0x31, 0xC4}});
  EXPECT_NE(inst.cipher(1).params().cipher_id(), inst.cipher(2).params().cipher_id());
  EXPECT_NE(inst.cipher(2).params().cipher_id(), inst.cipher(3).params().cipher_id());
  for (Word m = 0; m < 256; ++m) {
    ASSERT_EQ(inst.encrypt(m), inst.cipher(3).encrypt(0x31, inst.cipher(2).encrypt(0xC4, inst.cipher(1).encrypt(0x31, m))));
  }
}

TEST(Construction, ThreeXorComposition) {
  const ConstructionInstance inst(config(Scheme::ThreeXorCascade), KeyTuple{{0x5A, 0x13, 0xE7}});
  const auto& e1 = inst.cipher(1);
  const auto& e2 = inst.cipher(2);
  EXPECT_NE(e1.params().cipher_id(), e2.params().cipher_id());
  for (Word m = 0; m < 256; ++m) {
    ASSERT_EQ(inst.encrypt(m), e2.encrypt(0x5A, e1.encrypt(0x5A, m ^ 0x13) ^ 0xE7) ^ 0x13);
  }
  auto cfg = config(Scheme::ThreeXorCascade);
  cfg.share_ciphers = true;
  const ConstructionInstance shared(cfg, KeyTuple{{0x5A, 0x13, 0xE7}});
  EXPECT_EQ(shared.cipher(1).params(), shared.cipher(2).params());
}

TEST(Construction, ZeroWhiteningReducesToDoubleEncryption) {
  const ConstructionInstance inst(config(Scheme::ThreeXorCascade), KeyTuple{{0x77, 0, 0}});
  for (Word m = 0; m < 256; ++m) {
    ASSERT_EQ(inst.encrypt(m), inst.cipher(2).encrypt(0x77, inst.cipher(1).encrypt(0x77, m)));
  }
}

TEST(Construction, KarcGoldenValues) {
  SchemeConfig cfg;
  cfg.scheme = Scheme::Karc;
  cfg.kappa = 8;
  cfg.n = 8;
  cfg.cipher_base_id = 1;
  const ConstructionInstance inst(cfg, KeyTuple{{0x2a, 0x5c, 0x93}});
  EXPECT_EQ(inst.encrypt(0x00), 0x6eu);
  EXPECT_EQ(inst.encrypt(0x01), 0x35u);
  EXPECT_EQ(inst.encrypt(0x80), 0x4cu);
  EXPECT_EQ(inst.encrypt(0xff), 0xdeu);
}

TEST(Construction, KarcConstantUnderTrueKeys) {
  const auto lin = linear_ops(8);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = ConstructionInstance::random(config(Scheme::Karc), seed);
    const Word k = inst.secret_keys().parts[0];
    const Word k1 = inst.secret_keys().parts[1];
    const Word k2 = inst.secret_keys().parts[2];
    const auto& e = inst.cipher(1);
    const Word expected = lin.reflect(k2) ^ lin.sigma(k2);
    for (Word m = 0; m < 256; ++m) {
      const Word a = e.encrypt(k, m ^ k1);
      const Word b = e.encrypt(k ^ karc_alpha(8), inst.encrypt(m) ^ lin.sigma(k1));
      ASSERT_EQ(b ^ lin.reflect(a), expected);
    }
  }
}

TEST(Construction, ThreeXorRewriteIdentity) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto inst = ConstructionInstance::random(config(Scheme::ThreeXorCascade, 10, 8), rng());
    const auto rw = inst.rewrite_3xce_as_g2kte();
    for (Word m = 0; m < 256; ++m) {
      ASSERT_EQ(rw.compose(m), inst.encrypt(m));
      ASSERT_EQ(rw.outer_first_inverse(rw.outer_first(m)), m);
      ASSERT_EQ(rw.outer_last_inverse(rw.outer_last(m)), m);
    }
  }
  EXPECT_THROW(ConstructionInstance::random(config(Scheme::Karc), 1).rewrite_3xce_as_g2kte(), ParameterError);
}

TEST(MiddleLayers, InvolutionsAndInverses) {
  for (const auto kind : {MiddleKind::Xor, MiddleKind::ReflectionAffine, MiddleKind::RandomInvolution,
                          MiddleKind::PTwistedInvolution}) {
    for (Word k2 : {0u, 1u, 0x5Cu, 0xFFu}) {
      const auto layer = middle_layer(kind, Key(k2, 8), 0x5eed);
      for (Word x = 0; x < 256; ++x) {
        ASSERT_EQ(layer.invert(layer.apply(x)), x);
      }
      if (kind == MiddleKind::Xor || kind == MiddleKind::RandomInvolution) {
        EXPECT_TRUE(involution_check([&](Word x) { return layer.apply(x); }, 8)) << middle_kind_name(kind);
      }
    }
  }
}

TEST(MiddleLayers, PTwistedSatisfiesLPLIdentity) {
  const auto p = public_twist_permutation(8, 0x5eed);
  for (Word x = 0; x < 256; ++x) {
    ASSERT_NE(p[x], x);
    ASSERT_EQ(p[p[x]], x);
  }
  for (Word k2 = 0; k2 < 256; k2 += 15) {
    const auto layer = middle_layer(MiddleKind::PTwistedInvolution, Key(k2, 8), 0x5eed);
    ASSERT_TRUE(layer.twist());
    EXPECT_EQ(*layer.twist(), p);
    int fixed_by_l2 = 0;
    for (Word x = 0; x < 256; ++x) {
      ASSERT_EQ(layer.apply(p[layer.apply(x)]), x);
      fixed_by_l2 += layer.apply(layer.apply(x)) == x ? 1 : 0;
    }
    // L itself is not an involution.
    EXPECT_LT(fixed_by_l2, 256);
  }
}

TEST(MiddleLayers, RandomInvolutionDependsOnKey) {
  const auto a = middle_layer(MiddleKind::RandomInvolution, Key(1, 8), 0x5eed);
  const auto b = middle_layer(MiddleKind::RandomInvolution, Key(2, 8), 0x5eed);
  int same = 0;
  for (Word x = 0; x < 256; ++x) {
    same += a.apply(x) == b.apply(x) ? 1 : 0;
  }
  EXPECT_LT(same, 16);
}

TEST(Oracle, Q1HandleRejectsQueriesInsidePredicate) {
  const auto inst = ConstructionInstance::random(config(Scheme::ThreeXorCascade), 3);
  CostLedger ledger;
  OracleHandle q1(inst, AccessModel::Q1, ledger);
  EXPECT_EQ(q1.encrypt(5), inst.encrypt(5));
  EXPECT_EQ(ledger.online().construction_queries_classical, 1u);
  {
    SearchPredicateScope scope;
    EXPECT_TRUE(in_search_predicate());
    EXPECT_THROW(q1.encrypt(5), ModelViolation);
    EXPECT_THROW(q1.decrypt(5), ModelViolation);
  }
  EXPECT_FALSE(in_search_predicate());
  EXPECT_EQ(ledger.online().construction_queries_superposition, 0u);
}

TEST(Oracle, Q2HandleCountsSuperpositionQueries) {
  const auto inst = ConstructionInstance::random(config(Scheme::TwoKeyTriple), 3);
  CostLedger ledger;
  OracleHandle q2(inst, AccessModel::Q2, ledger);
  {
    SearchPredicateScope scope;
    EXPECT_EQ(q2.decrypt(q2.encrypt(9)), 9u);
  }
  q2.encrypt(1);
  EXPECT_EQ(ledger.online().construction_queries_superposition, 2u);
  EXPECT_EQ(ledger.online().construction_queries_classical, 1u);
}

TEST(Ledger, MuteAndPreprocessingScopes) {
  CostLedger ledger;
  ledger.add_cipher_evals(3);
  {
    CostLedger::MuteScope mute(ledger);
    ledger.add_cipher_evals(100);
  }
  {
    CostLedger::PreprocessingScope pre(ledger);
    ledger.add_cipher_evals(7);
    ledger.note_classical_memory(10);
  }
  ledger.note_qram_entries(5);
  ledger.note_qram_entries(3);
  ledger.charge_predicate(PredicateCost{2, 3, 4}, 10);
  EXPECT_EQ(ledger.online().cipher_evals, 33u);
  EXPECT_EQ(ledger.online().qram_entries, 5u);
  EXPECT_EQ(ledger.online().predicate_evals, 10u);
  EXPECT_EQ(ledger.online().construction_queries_superposition, 20u);
  EXPECT_EQ(ledger.online().comparisons, 40u);
  EXPECT_EQ(ledger.preprocessing().cipher_evals, 7u);
  EXPECT_EQ(ledger.preprocessing().classical_memory_entries, 10u);
}

TEST(Rationals, ExactArithmetic) {
  EXPECT_EQ(Rational(20, 3).to_string(), "20/3");
  EXPECT_EQ(Rational(16, 2).to_string(), "8");
  EXPECT_EQ(Rational(1, 3) + Rational(2, 3), Rational(1));
  EXPECT_EQ(Rational(-2, -4), Rational(1, 2));
  EXPECT_LT(Rational(13, 2), Rational(20, 3));
  EXPECT_EQ(Rational(3, 4) * Rational(4, 3), Rational(1));
}
