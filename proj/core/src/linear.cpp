#include "kleq/linear.hpp"

#include <array>
#include <string>

namespace kleq {

Word rotate_left1(Word x, unsigned n) noexcept {
  const Word m = low_mask(n);
  x &= m;
  return ((x << 1) | (x >> (n - 1))) & m;
}

Word rotate_right1(Word x, unsigned n) noexcept {
  const Word m = low_mask(n);
  x &= m;
  return ((x >> 1) | (x << (n - 1))) & m;
}

Word bit_reverse(Word x, unsigned n) noexcept {
  Word out = 0;
  for (unsigned i = 0; i < n; ++i) {
    out = (out << 1) | ((x >> i) & 1U);
  }
  return out;
}

LinearOps::LinearOps(unsigned n) : n_(n) {
  if (n < 2 || n > 32) {
    throw ParameterError("linear ops need 2 <= n <= 32, got " + std::to_string(n));
  }
}

LinearOps linear_ops(unsigned n) { return LinearOps(n); }

bool involution_check(const std::function<Word(Word)>& f, unsigned n) {
  if (n > 16) {
    throw ResourceError("exhaustive involution check limited to n <= 16");
  }
  const Word size = Word{1} << n;
  for (Word x = 0; x < size; ++x) {
    if (f(f(x)) != x) {
      return false;
    }
  }
  return true;
}

std::optional<Word> solve_linear(const std::function<Word(Word)>& map, unsigned n, Word target) {
  // Row-reduce the augmented system. Row i is the equation for output bit i:
  // bits [0, n) hold coefficients of the unknowns, bit n the right-hand side.
  std::array<std::uint64_t, 32> rows{};
  for (unsigned j = 0; j < n; ++j) {
    const Word col = map(Word{1} << j);
    for (unsigned i = 0; i < n; ++i) {
      if ((col >> i) & 1U) {
        rows[i] |= std::uint64_t{1} << j;
      }
    }
  }
  for (unsigned i = 0; i < n; ++i) {
    if ((target >> i) & 1U) {
      rows[i] |= std::uint64_t{1} << n;
    }
  }

  std::array<int, 32> pivot_row_of_col;
  pivot_row_of_col.fill(-1);
  unsigned rank = 0;
  for (unsigned col = 0; col < n && rank < n; ++col) {
    unsigned pivot = rank;
    while (pivot < n && ((rows[pivot] >> col) & 1U) == 0) {
      ++pivot;
    }
    if (pivot == n) {
      continue;
    }
    std::swap(rows[pivot], rows[rank]);
    for (unsigned i = 0; i < n; ++i) {
      if (i != rank && ((rows[i] >> col) & 1U)) {
        rows[i] ^= rows[rank];
      }
    }
    pivot_row_of_col[col] = static_cast<int>(rank);
    ++rank;
  }
  for (unsigned i = rank; i < n; ++i) {
    if ((rows[i] >> n) & 1U) {
      return std::nullopt;
    }
  }
  // Free variables are zero.
  Word x = 0;
  for (unsigned col = 0; col < n; ++col) {
    if (pivot_row_of_col[col] >= 0 && ((rows[pivot_row_of_col[col]] >> n) & 1U)) {
      x |= Word{1} << col;
    }
  }
  return x;
}

}  // namespace kleq
