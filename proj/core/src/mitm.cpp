#include "kleq/mitm.hpp"

#include <algorithm>
#include <fstream>
#include <string>
#include <unordered_set>

#include "kleq/errors.hpp"

namespace kleq {

unsigned default_t_2kte(unsigned kappa, unsigned n) { return (2 * kappa + n - 1) / n + 1; }

unsigned default_t_3xce(unsigned kappa, unsigned n) { return (kappa + 2 * n + n - 1) / n + 1; }

namespace {

void check_t(unsigned t, unsigned n) {
  if (t == 0 || t * n > kMaxConcatBits) {
    throw ParameterError("t*n = " + std::to_string(t * n) + " exceeds the " + std::to_string(kMaxConcatBits) +
                         "-bit concatenation limit");
  }
  if (t >= (std::uint64_t{1} << n)) {
    throw ParameterError("t = " + std::to_string(t) + " plaintext constants do not fit in n = " + std::to_string(n) +
                         " bits");
  }
}

bool is_2kte_family(Scheme s) {
  return s == Scheme::TwoKeyTriple || s == Scheme::TwoKeyTripleEde || s == Scheme::GeneralizedTwoKeyTriple;
}

}  // namespace

MitmFunctionPair build_fg_2kte(OracleHandle& handle, std::optional<unsigned> t_override) {
  const auto& cfg = handle.config();
  if (!is_2kte_family(cfg.scheme)) {
    throw ParameterError("2kTE function pair needs a 2kte, 2kte-ede or g2kte instance");
  }
  const unsigned n = cfg.n;
  const unsigned t = t_override.value_or(default_t_2kte(cfg.kappa, n));
  check_t(t, n);

  MitmFunctionPair p;
  p.t = t;
  p.n = n;
  p.x_bits = cfg.kappa;
  p.y_bits = cfg.kappa;
  p.f_cost = {t, 2 * std::uint64_t{t}, 0};
  p.g_cipher_evals = t;

  const ToyCipher e1 = handle.cipher(1);
  const ToyCipher e2 = handle.cipher(2);
  const ToyCipher e3 = handle.cipher(3);
  OracleHandle* h = &handle;
  p.f = [h, e1, e3, t, n](std::uint64_t x) {
    const auto ks1 = e1.schedule(static_cast<Word>(x));
    const auto ks3 = e3.schedule(static_cast<Word>(x));
    ConcatValue v;
    for (Word i = 1; i <= t; ++i) {
      v.append(e3.decrypt(ks3, h->encrypt(e1.decrypt(ks1, i))), n);
    }
    return v;
  };
  const bool ede = cfg.scheme == Scheme::TwoKeyTripleEde;
  p.g = [e2, t, n, ede](std::uint64_t y) {
    const auto ks2 = e2.schedule(static_cast<Word>(y));
    ConcatValue v;
    for (Word i = 1; i <= t; ++i) {
      v.append(ede ? e2.decrypt(ks2, i) : e2.encrypt(ks2, i), n);
    }
    return v;
  };
  return p;
}

MitmFunctionPair build_fg_3xce(OracleHandle& handle, std::optional<unsigned> t_override) {
  const auto& cfg = handle.config();
  if (cfg.scheme != Scheme::ThreeXorCascade) {
    throw ParameterError("3XCE function pair needs a 3xce instance");
  }
  const unsigned n = cfg.n;
  const unsigned t = t_override.value_or(default_t_3xce(cfg.kappa, n));
  check_t(t, n);

  MitmFunctionPair p;
  p.t = t;
  p.n = n;
  p.x_bits = cfg.kappa + n;
  p.y_bits = n;
  p.f_cost = {t, 2 * std::uint64_t{t}, 0};
  p.g_cipher_evals = 0;

  const ToyCipher e1 = handle.cipher(1);
  const ToyCipher e2 = handle.cipher(2);
  OracleHandle* h = &handle;
  const Word mask = low_mask(n);
  p.f = [h, e1, e2, t, n, mask](std::uint64_t x) {
    const ThreeXorRewrite rw(e1, e2, static_cast<Word>(x >> n), static_cast<Word>(x) & mask, 0);
    ConcatValue v;
    for (Word i = 1; i <= t; ++i) {
      v.append(rw.outer_last_inverse(h->encrypt(rw.outer_first_inverse(i))), n);
    }
    return v;
  };
  p.g = [t, n](std::uint64_t y) {
    ConcatValue v;
    for (Word i = 1; i <= t; ++i) {
      v.append(i ^ static_cast<Word>(y), n);
    }
    return v;
  };
  return p;
}

MembershipTable::MembershipTable(std::vector<Entry> entries, std::uint64_t r, unsigned key_bits, unsigned n,
                                 unsigned t)
    : entries_(std::move(entries)), r_(r), key_bits_(key_bits), n_(n), t_(t) {
  if (r_ == 0 || r_ > std::max<std::size_t>(entries_.size(), 1)) {
    throw ParameterError("partition arity r = " + std::to_string(r_) + " must lie in [1, " +
                         std::to_string(entries_.size()) + "]");
  }
}

MembershipTable MembershipTable::build(const MitmFunctionPair& pair, std::uint64_t r, CostLedger& ledger,
                                       std::uint64_t memory_budget_bytes) {
  const std::uint64_t size = std::uint64_t{1} << pair.y_bits;
  if (r == 0 || r > size) {
    throw ParameterError("partition arity r = " + std::to_string(r) + " must lie in [1, 2^" +
                         std::to_string(pair.y_bits) + "]");
  }
  const std::uint64_t bytes = size * sizeof(Entry);
  if (bytes > memory_budget_bytes) {
    throw ResourceError("membership table needs " + std::to_string(bytes) + " bytes, budget is " +
                        std::to_string(memory_budget_bytes));
  }
  std::vector<Entry> entries(size);
  for (std::uint64_t y = 0; y < size; ++y) {
    entries[y] = {pair.g(y), y};
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.value != b.value ? a.value < b.value : a.y < b.y;
  });
  ledger.add_cipher_evals(pair.g_cipher_evals * size);
  ledger.note_classical_memory(size);
  return {std::move(entries), r, pair.y_bits, pair.n, pair.t};
}

std::span<const MembershipTable::Entry> MembershipTable::view(std::uint64_t i) const {
  if (i >= r_) {
    throw ParameterError("sub-table index " + std::to_string(i) + " out of range");
  }
  const std::uint64_t size = entries_.size();
  const std::uint64_t begin = i * size / r_;
  const std::uint64_t end = (i + 1) * size / r_;
  return std::span<const Entry>(entries_).subspan(begin, end - begin);
}

std::uint64_t MembershipTable::view_of_position(std::size_t pos) const noexcept {
  const std::uint64_t size = entries_.size();
  std::uint64_t i = pos * r_ / size;
  while (i + 1 < r_ && (i + 1) * size / r_ <= pos) {
    ++i;
  }
  while (i > 0 && i * size / r_ > pos) {
    --i;
  }
  return i;
}

namespace {

struct ValueLess {
  bool operator()(const MembershipTable::Entry& e, const ConcatValue& v) const { return e.value < v; }
  bool operator()(const ConcatValue& v, const MembershipTable::Entry& e) const { return v < e.value; }
};

}  // namespace

std::vector<std::uint64_t> MembershipTable::lookup(std::span<const Entry> view, const ConcatValue& value) {
  const auto [lo, hi] = std::equal_range(view.begin(), view.end(), value, ValueLess{});
  std::vector<std::uint64_t> ys;
  for (auto it = lo; it != hi; ++it) {
    ys.push_back(it->y);
  }
  return ys;
}

bool MembershipTable::contains(std::span<const Entry> view, const ConcatValue& value) {
  return std::binary_search(view.begin(), view.end(), value, ValueLess{});
}

namespace {

constexpr char kMagic[8] = {'K', 'L', 'E', 'Q', 'T', 'B', 'L', '1'};

void put_u16(std::ofstream& out, std::uint64_t v) {
  const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  out.write(b, 2);
}

std::uint16_t get_u16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

}  // namespace

void MembershipTable::save(const std::filesystem::path& path) const {
  if (r_ > 0xffff) {
    throw ParameterError("partition arity too large for the table header");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ResourceError("cannot open " + path.string() + " for writing");
  }
  out.write(kMagic, sizeof kMagic);
  put_u16(out, key_bits_);
  put_u16(out, n_);
  put_u16(out, t_);
  put_u16(out, r_);
  const unsigned value_bytes = (t_ * n_ + 7) / 8;
  const unsigned key_bytes = (key_bits_ + 7) / 8;
  for (const auto& e : entries_) {
    const auto bytes = e.value.le_bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()), value_bytes);
    for (unsigned b = 0; b < key_bytes; ++b) {
      out.put(static_cast<char>((e.y >> (8 * b)) & 0xff));
    }
  }
  if (!out) {
    throw ResourceError("write to " + path.string() + " failed");
  }
}

MembershipTable MembershipTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ResourceError("cannot open " + path.string());
  }
  unsigned char header[16];
  if (!in.read(reinterpret_cast<char*>(header), sizeof header) || !std::equal(kMagic, kMagic + 8, header)) {
    throw ParameterError(path.string() + " is not a membership table file");
  }
  const unsigned key_bits = get_u16(header + 8);
  const unsigned n = get_u16(header + 10);
  const unsigned t = get_u16(header + 12);
  const unsigned r = get_u16(header + 14);
  if (key_bits > 32 || t * n > kMaxConcatBits) {
    throw ParameterError(path.string() + " has an unsupported header");
  }
  const unsigned value_bytes = (t * n + 7) / 8;
  const unsigned key_bytes = (key_bits + 7) / 8;
  const std::size_t count = std::size_t{1} << key_bits;
  std::vector<Entry> entries(count);
  std::vector<unsigned char> rec(value_bytes + key_bytes);
  for (auto& e : entries) {
    if (!in.read(reinterpret_cast<char*>(rec.data()), static_cast<std::streamsize>(rec.size()))) {
      throw ParameterError(path.string() + " is truncated");
    }
    e.value = ConcatValue::from_le_bytes(rec.data(), value_bytes, t * n);
    e.y = 0;
    for (unsigned b = key_bytes; b-- > 0;) {
      e.y = (e.y << 8) | rec[value_bytes + b];
    }
  }
  return {std::move(entries), r, key_bits, n, t};
}

std::uint64_t ceil_log2(std::uint64_t size) noexcept {
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < size) {
    ++bits;
  }
  return bits;
}

KeyPredicate predicate_F_table(const MitmFunctionPair& pair, std::span<const MembershipTable::Entry> view) {
  KeyPredicate p;
  p.cost = pair.f_cost;
  p.cost.comparisons += ceil_log2(view.size());
  p.test = [f = pair.f, view](std::uint64_t x) { return MembershipTable::contains(view, f(x)); };
  return p;
}

std::vector<PlainCipherPair> collect_pairs(OracleHandle& handle, std::size_t count, Rng& rng,
                                           std::span<const Word> exclude) {
  const std::uint64_t domain = std::uint64_t{1} << handle.n();
  std::unordered_set<Word> used(exclude.begin(), exclude.end());
  if (count + used.size() > domain) {
    throw ParameterError("cannot draw " + std::to_string(count) + " distinct plaintexts from 2^" +
                         std::to_string(handle.n()));
  }
  std::vector<PlainCipherPair> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto m = static_cast<Word>(uniform_below(rng, domain));
    if (used.insert(m).second) {
      out.push_back({m, handle.encrypt(m)});
    }
  }
  return out;
}

KeyPredicate predicate_F_delta(const ToyCipher& e1, const ToyCipher& e2, std::vector<PlainCipherPair> data) {
  if (data.size() < 2) {
    throw ParameterError("the delta predicate needs at least 2 plaintext-ciphertext pairs");
  }
  const std::uint64_t t = data.size();
  KeyPredicate p;
  p.cost = {0, 2 * t, t - 1};
  const unsigned n = e1.n();
  const Word mask = low_mask(n);
  p.test = [e1, e2, data = std::move(data), n, mask](std::uint64_t key) {
    const auto x = static_cast<Word>(key >> n);
    const Word y = static_cast<Word>(key) & mask;
    const auto ks1 = e1.schedule(x);
    const auto ks2 = e2.schedule(x);
    const Word d0 = e1.encrypt(ks1, data[0].m ^ y) ^ e2.decrypt(ks2, data[0].c ^ y);
    for (std::size_t i = 1; i < data.size(); ++i) {
      if ((e1.encrypt(ks1, data[i].m ^ y) ^ e2.decrypt(ks2, data[i].c ^ y)) != d0) {
        return false;
      }
    }
    return true;
  };
  return p;
}

Word delta_first(const ToyCipher& e1, const ToyCipher& e2, const PlainCipherPair& pair, std::uint64_t key) {
  const unsigned n = e1.n();
  const auto x = static_cast<Word>(key >> n);
  const Word y = static_cast<Word>(key) & low_mask(n);
  return e1.encrypt(x, pair.m ^ y) ^ e2.decrypt(x, pair.c ^ y);
}

}  // namespace kleq
