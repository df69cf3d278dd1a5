#pragma once

#include <functional>
#include <optional>

#include "kleq/cipher.hpp"

namespace kleq {

Word rotate_left1(Word x, unsigned n) noexcept;
Word rotate_right1(Word x, unsigned n) noexcept;
Word bit_reverse(Word x, unsigned n) noexcept;

/// The fixed linear maps used by the reflection middle layer:
/// sigma = rotate-left-by-one (invertible), reflect = bit reversal (involution).
class LinearOps {
 public:
  explicit LinearOps(unsigned n);

  unsigned n() const noexcept { return n_; }
  Word sigma(Word x) const noexcept { return rotate_left1(x, n_); }
  Word sigma_inverse(Word x) const noexcept { return rotate_right1(x, n_); }
  Word reflect(Word x) const noexcept { return bit_reverse(x, n_); }

 private:
  unsigned n_;
};

LinearOps linear_ops(unsigned n);

/// Exhaustive f(f(x)) == x over {0,1}^n; n <= 16.
bool involution_check(const std::function<Word(Word)>& f, unsigned n);

/// Solves map(x) == target over GF(2)^n for a linear map given as a function;
/// returns some solution or nullopt when target is outside the image.
std::optional<Word> solve_linear(const std::function<Word(Word)>& map, unsigned n, Word target);

}  // namespace kleq
