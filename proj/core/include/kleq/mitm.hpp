#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kleq/concat.hpp"
#include "kleq/ledger.hpp"
#include "kleq/oracle.hpp"
#include "kleq/random.hpp"

namespace kleq {

/// t = ceil(2 kappa / n) + 1 blocks for the 2kTE family.
unsigned default_t_2kte(unsigned kappa, unsigned n);
/// t = ceil((kappa + 2n) / n) + 1 blocks or pairs for the 3XCE family.
unsigned default_t_3xce(unsigned kappa, unsigned n);

/// Meet-in-the-middle pair (f, g). f queries the construction through the
/// handle; g only uses the public ciphers. Both map a key of x_bits / y_bits
/// to the concatenation of t n-bit blocks, evaluated at plaintext constants
/// 1..t. Neither function charges cipher evaluations itself: callers bill
/// `f_cost` / `g_cipher_evals` for the evaluations their model counts.
struct MitmFunctionPair {
  unsigned t = 0;
  unsigned n = 0;
  unsigned x_bits = 0;
  unsigned y_bits = 0;
  std::function<ConcatValue(std::uint64_t)> f;
  std::function<ConcatValue(std::uint64_t)> g;
  PredicateCost f_cost;
  std::uint64_t g_cipher_evals = 0;

  unsigned width() const noexcept { return t * n; }
};

/// 2kTE / EDE / G2kTE: f(x) = D3_x(Enc(D1_x(i))), g(y) = E2_y(i) (D2_y(i)
/// for the EDE shape). Claw at (k1, k2).
MitmFunctionPair build_fg_2kte(OracleHandle& handle, std::optional<unsigned> t = std::nullopt);

/// 3XCE through its three-map rewrite: x = (k << n) | k1 over kappa+n bits,
/// f(x) = E3~^-1_x(Enc(E1~^-1_x(i))), g(y) = i ^ y over n bits. Claw at
/// ((k << n) | k1, k2).
MitmFunctionPair build_fg_3xce(OracleHandle& handle, std::optional<unsigned> t = std::nullopt);

/// Sorted (g(y), y) table over the whole y-space, split into r contiguous
/// sub-tables whose sizes differ by at most one.
class MembershipTable {
 public:
  struct Entry {
    ConcatValue value;
    std::uint64_t y = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{1} << 30;  // bytes

  /// Evaluates g on all 2^y_bits keys (charging t cipher evaluations each),
  /// sorts, and partitions. Throws ResourceError when the table would exceed
  /// `memory_budget_bytes`, ParameterError unless 1 <= r <= 2^y_bits.
  static MembershipTable build(const MitmFunctionPair& pair, std::uint64_t r, CostLedger& ledger,
                               std::uint64_t memory_budget_bytes = kDefaultMemoryBudget);

  MembershipTable(std::vector<Entry> entries, std::uint64_t r, unsigned key_bits, unsigned n, unsigned t);

  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t r() const noexcept { return r_; }
  unsigned key_bits() const noexcept { return key_bits_; }
  unsigned n() const noexcept { return n_; }
  unsigned t() const noexcept { return t_; }

  std::span<const Entry> entries() const noexcept { return entries_; }
  /// Sub-table L_i, i in [0, r).
  std::span<const Entry> view(std::uint64_t i) const;
  /// Index of the sub-table holding position `pos` of the sorted table.
  std::uint64_t view_of_position(std::size_t pos) const noexcept;

  /// All y in `view` with g(y) == value.
  static std::vector<std::uint64_t> lookup(std::span<const Entry> view, const ConcatValue& value);
  static bool contains(std::span<const Entry> view, const ConcatValue& value);

  /// 16-byte header "KLEQTBL1" + u16 LE key_bits, n, t, r; then per entry
  /// ceil(t*n/8) value bytes and ceil(key_bits/8) key bytes, little endian.
  void save(const std::filesystem::path& path) const;
  static MembershipTable load(const std::filesystem::path& path);

  friend bool operator==(const MembershipTable&, const MembershipTable&) = default;

 private:
  std::vector<Entry> entries_;
  std::uint64_t r_;
  unsigned key_bits_;
  unsigned n_;
  unsigned t_;
};

/// A search predicate together with its declared per-evaluation cost.
struct KeyPredicate {
  std::function<bool(std::uint64_t)> test;
  PredicateCost cost;
};

/// ceil(log2 size), 0 for size <= 1.
std::uint64_t ceil_log2(std::uint64_t size) noexcept;

/// F(x) = 1 iff f(x) is in the view. Cost: one f evaluation plus
/// ceil(log2 |view|) comparisons.
KeyPredicate predicate_F_table(const MitmFunctionPair& pair, std::span<const MembershipTable::Entry> view);

struct PlainCipherPair {
  Word m = 0;
  Word c = 0;
  friend bool operator==(const PlainCipherPair&, const PlainCipherPair&) = default;
};

/// Queries `count` distinct random plaintexts, skipping those in `exclude`.
/// Classical queries: must not run inside a search predicate.
std::vector<PlainCipherPair> collect_pairs(OracleHandle& handle, std::size_t count, Rng& rng,
                                           std::span<const Word> exclude = {});

/// delta_i = E1_x(m_i ^ y) ^ D2_x(c_i ^ y) for 3XCE data.
/// F(key) = 1 iff every delta_i is equal, where key = (x << n) | y.
/// Cost: 2t cipher evaluations and t-1 comparisons; no construction queries.
KeyPredicate predicate_F_delta(const ToyCipher& e1, const ToyCipher& e2, std::vector<PlainCipherPair> data);

/// delta_1 for the key, i.e. the candidate k2 once F(key) = 1.
Word delta_first(const ToyCipher& e1, const ToyCipher& e2, const PlainCipherPair& pair, std::uint64_t key);

}  // namespace kleq
