#include "kleq/groundtruth.hpp"

#include <algorithm>
#include <string>

#include "kleq/errors.hpp"

namespace kleq {

std::vector<KeyTuple> brute_force_keys(const ConstructionInstance& inst, std::span<const PlainCipherPair> data,
                                       unsigned max_bits) {
  const auto layout = key_layout(inst.config());
  unsigned total = 0;
  for (const auto& slot : layout) {
    total += slot.width;
  }
  if (total > max_bits) {
    throw ResourceError("brute force over " + std::to_string(total) + " key bits exceeds the budget of " +
                        std::to_string(max_bits));
  }
  std::vector<KeyTuple> out;
  const std::uint64_t count = std::uint64_t{1} << total;
  for (std::uint64_t packed = 0; packed < count; ++packed) {
    KeyTuple keys;
    keys.parts.resize(layout.size());
    std::uint64_t rest = packed;
    for (std::size_t s = 0; s < layout.size(); ++s) {
      keys.parts[s] = static_cast<Word>(rest & low_mask(layout[s].width));
      rest >>= layout[s].width;
    }
    const auto candidate = inst.with_keys(keys);
    const bool ok = std::all_of(data.begin(), data.end(),
                                [&](const PlainCipherPair& p) { return candidate.encrypt(p.m) == p.c; });
    if (ok) {
      out.push_back(std::move(keys));
    }
  }
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> enumerate_claws(const MitmFunctionPair& pair,
                                                                     unsigned max_side_bits) {
  if (pair.x_bits > max_side_bits || pair.y_bits > max_side_bits) {
    throw ResourceError("claw enumeration over 2^" + std::to_string(pair.x_bits) + " x 2^" +
                        std::to_string(pair.y_bits) + " exceeds the 2^" + std::to_string(max_side_bits) +
                        " per-side budget");
  }
  std::vector<std::pair<ConcatValue, std::uint64_t>> gs(std::size_t{1} << pair.y_bits);
  for (std::uint64_t y = 0; y < gs.size(); ++y) {
    gs[y] = {pair.g(y), y};
  }
  std::sort(gs.begin(), gs.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::uint64_t xs = std::uint64_t{1} << pair.x_bits;
  for (std::uint64_t x = 0; x < xs; ++x) {
    const auto fx = pair.f(x);
    auto it = std::lower_bound(gs.begin(), gs.end(), std::make_pair(fx, std::uint64_t{0}));
    for (; it != gs.end() && it->first == fx; ++it) {
      out.emplace_back(x, it->second);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MirrorPairScan enumerate_mirror_pairs(const ConstructionInstance& inst, std::span<const Word> plaintexts) {
  const auto& cfg = inst.config();
  if (cfg.scheme != Scheme::ThreeXorCascade && cfg.scheme != Scheme::TildeThreeXorCascade) {
    throw ParameterError("mirror pairs are defined for 3xce and 3xce-tilde instances");
  }
  const Word k = inst.secret_keys().parts[0];
  const Word k1 = inst.secret_keys().parts[1];
  const auto& e1 = inst.cipher(1);
  const auto& e2 = inst.cipher(2);
  const auto twist = inst.middle() ? inst.middle()->twist() : nullptr;

  const std::size_t t = plaintexts.size();
  std::vector<Word> u(t);
  std::vector<Word> v(t);
  for (std::size_t i = 0; i < t; ++i) {
    u[i] = e1.encrypt(k, plaintexts[i] ^ k1);
    v[i] = e2.decrypt(k, inst.encrypt(plaintexts[i]) ^ k1);
  }
  MirrorPairScan scan;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      if (i == j || u[i] != v[j]) {
        continue;
      }
      scan.pairs.emplace_back(i, j);
      const Word lhs = twist ? (*twist)[v[i]] : v[i];
      if (lhs != u[j]) {
        ++scan.violations;
      }
    }
  }
  return scan;
}

}  // namespace kleq
