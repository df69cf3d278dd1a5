#include <gtest/gtest.h>

#include <cmath>

#include "kleq/construction.hpp"
#include "kleq/distinguisher.hpp"
#include "kleq/random.hpp"

using namespace kleq;

namespace {

PairSet random_pairs(Rng& rng, unsigned n, std::size_t t) {
  PairSet s;
  for (std::size_t i = 0; i < t; ++i) {
    s.push_back({static_cast<Word>(rng() & low_mask(n)), static_cast<Word>(rng() & low_mask(n))});
  }
  return s;
}

}  // namespace

TEST(Distinguisher, Names) {
  for (const auto k : {DistinguisherKind::XorDifference, DistinguisherKind::Reflection, DistinguisherKind::MirrorPair,
                       DistinguisherKind::Pointwise}) {
    EXPECT_EQ(parse_distinguisher(distinguisher_name(k)), k);
  }
}

TEST(Distinguisher, XorDifferenceExamples) {
  const auto d = xor_difference_distinguisher(8);
  const PairSet yes{{0x01, 0x10}, {0x02, 0x13}, {0xF0, 0xE1}};
  const PairSet no{{0x01, 0x10}, {0x02, 0x12}};
  EXPECT_TRUE(d.decide(yes));
  EXPECT_EQ(d.constant(yes), 0x11u);
  EXPECT_FALSE(d.decide(no));
  EXPECT_FALSE(d.constant(no));
  EXPECT_THROW(d.decide(PairSet{{1, 2}}), ParameterError);
  EXPECT_EQ(d.cost_T(4), 3u);
}

TEST(Distinguisher, ReflectionExamples) {
  const auto d = reflection_distinguisher(8);
  const auto lin = linear_ops(8);
  PairSet s;
  for (Word a : {3u, 77u, 200u}) {
    s.push_back({a, lin.reflect(a) ^ 0x5C});
  }
  EXPECT_TRUE(d.decide(s));
  EXPECT_EQ(d.constant(s), 0x5Cu);
  s[1].b ^= 1;
  EXPECT_FALSE(d.decide(s));
}

TEST(Distinguisher, MirrorPairExamples) {
  const auto d = mirror_pair_distinguisher(8);
  EXPECT_TRUE(d.decide(PairSet{{1, 2}, {9, 9}, {2, 1}}));
  EXPECT_FALSE(d.decide(PairSet{{1, 2}, {2, 3}, {3, 1}}));
  EXPECT_FALSE(d.constant(PairSet{{1, 2}, {2, 1}}));
  EXPECT_EQ(d.cost_T(23), 529u);
}

TEST(Distinguisher, PointwiseExamples) {
  EXPECT_TRUE(pointwise_distinguisher(8).decide(PairSet{{4, 4}, {5, 5}}));
  EXPECT_FALSE(pointwise_distinguisher(8).decide(PairSet{{4, 4}, {5, 6}}));
  auto p = std::make_shared<const std::vector<Word>>(public_twist_permutation(8, 1));
  const auto d = pointwise_distinguisher(8, p);
  EXPECT_TRUE(d.twisted());
  EXPECT_TRUE(d.decide(PairSet{{4, (*p)[4]}, {5, (*p)[5]}}));
  EXPECT_FALSE(d.decide(PairSet{{4, 4}, {5, 5}}));
  EXPECT_THROW(pointwise_distinguisher(7, p), ParameterError);
}

TEST(Distinguisher, SoundUnderTrueMiddleLayer) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Word k2 = static_cast<Word>(rng() & 0xff);
    const auto xor_layer = middle_layer(MiddleKind::Xor, Key(k2, 8), 0x5eed);
    const auto refl_layer = middle_layer(MiddleKind::ReflectionAffine, Key(k2, 8), 0x5eed);
    PairSet xs;
    PairSet rs;
    for (int i = 0; i < 4; ++i) {
      const Word a = static_cast<Word>(rng() & 0xff);
      xs.push_back({a, xor_layer.apply(a)});
      rs.push_back({a, refl_layer.apply(a)});
    }
    ASSERT_TRUE(xor_difference_distinguisher(8).decide(xs));
    ASSERT_TRUE(reflection_distinguisher(8).decide(rs));
  }
}

TEST(Distinguisher, FalsePositiveRatesMonteCarlo) {
  Rng rng(1234);
  const int trials = 1000000;
  int xor_hits = 0;
  int refl_hits = 0;
  int mirror_hits = 0;
  const auto dx = xor_difference_distinguisher(8);
  const auto dr = reflection_distinguisher(8);
  const auto dm = mirror_pair_distinguisher(8);
  for (int i = 0; i < trials; ++i) {
    const auto s = random_pairs(rng, 8, 2);
    xor_hits += dx.decide(s) ? 1 : 0;
    refl_hits += dr.decide(s) ? 1 : 0;
    mirror_hits += dm.decide(s) ? 1 : 0;
  }
  const auto within = [&](int hits, double p) {
    const double mean = trials * p;
    return std::abs(hits - mean) <= 5.0 * std::sqrt(mean * (1 - p)) + 1.0;
  };
  EXPECT_TRUE(within(xor_hits, 1.0 / 256)) << xor_hits;
  EXPECT_TRUE(within(refl_hits, 1.0 / 256)) << refl_hits;
  EXPECT_TRUE(within(mirror_hits, 1.0 / 65536)) << mirror_hits;
}

TEST(Distinguisher, MirrorPairExistenceUnderInvolution) {
  // With b = L(a) for an involution L, pairs come in symmetric couples:
  // existence probability among t = 23 is about 1 - exp(-C(23,2)/256).
  Rng rng(77);
  const auto d = mirror_pair_distinguisher(8);
  const int trials = 2000;
  int found = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto layer = middle_layer(MiddleKind::RandomInvolution, Key(static_cast<Word>(rng() & 0xff), 8), rng());
    PairSet s;
    for (int i = 0; i < 23; ++i) {
      const Word a = static_cast<Word>(rng() & 0xff);
      s.push_back({a, layer.apply(a)});
    }
    found += d.decide(s) ? 1 : 0;
  }
  const double freq = static_cast<double>(found) / trials;
  EXPECT_GE(freq, 0.6);
  EXPECT_NEAR(freq, 1.0 - std::exp(-253.0 / 256.0), 0.05);
}
