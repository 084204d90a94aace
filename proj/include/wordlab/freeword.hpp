#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordlab {

/// One run x_var^exp of a free-group word. Variables are numbered from 1.
struct Syllable {
  std::uint32_t var = 0;
  std::int64_t exp = 0;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A reduced word in the free group F(x1, x2, ...), run-length encoded.
///
/// Adjacent syllables always carry distinct variables and no exponent is
/// zero, so the syllable sequence is the unique normal form. The empty
/// sequence is the identity word.
class Word {
 public:
  Word() = default;

  /// Reduces `raw` (merging equal neighbours and cancelling to zero) first.
  static Word from_syllables(std::span<const Syllable> raw);
  static Word variable(std::uint32_t var, std::int64_t exp = 1);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }

  /// Largest variable index occurring, 0 for the empty word.
  std::uint32_t arity() const;
  /// Reduced length in the free group: sum of |exp|.
  std::uint64_t length() const;

  /// Canonical text: lowercase x, '*' separators, exponent omitted when 1.
  /// The empty word prints as "".
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Syllable> syllables_;
};

/// Free reduction of an arbitrary syllable sequence (zero exponents allowed).
Word reduce(std::span<const Syllable> raw);

/// Parses `word := term (('*' | whitespace) term)* | empty` with
/// `term := ('x'|'X') INDEX ('^' ['-'] EXP)?`. Throws ParseError.
Word parse_word(std::string_view text);

Word invert(const Word& w);
Word concat(const Word& a, const Word& b);

/// w raised to an integer power (negative powers invert).
Word power(const Word& w, std::int64_t exponent);

/// Replaces x_i by images[i-1] and reduces. Throws std::invalid_argument if
/// images.size() < w.arity().
Word substitute(const Word& w, std::span<const Word> images);

/// Renames x_i to x_{i+offset}.
Word shift_variables(const Word& w, std::uint32_t offset);

/// The word v = w(x^-1 y z) * w(z)^-1 * w(y)^-1 * w(x) in 3d variables, with
/// x_i -> i, y_i -> d+i, z_i -> 2d+i. A tuple solves
///   w(x1^-1 y1 z1, ..., xd^-1 yd zd) = w(x)^-1 w(y) w(z)
/// iff v evaluates to the identity on it. `d` defaults to w.arity() and must
/// not be smaller.
Word derived_word(const Word& w);
Word derived_word(const Word& w, std::uint32_t d);

/// True iff derived_word(w) is not the empty word.
bool is_nontrivial_derived(const Word& w);

}  // namespace wordlab
