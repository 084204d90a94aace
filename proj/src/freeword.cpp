#include "wordlab/freeword.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "wordlab/errors.hpp"

namespace wordlab {

Word reduce(std::span<const Syllable> raw) { return Word::from_syllables(raw); }

Word Word::from_syllables(std::span<const Syllable> raw) {
  // Stack reduction: after a full cancellation the new top may merge with
  // the next incoming syllable, which handles cascades.
  Word w;
  w.syllables_.reserve(raw.size());
  for (const Syllable& s : raw) {
    if (s.exp == 0) continue;
    if (s.var == 0) throw std::invalid_argument("variable index must be positive");
    auto& out = w.syllables_;
    if (!out.empty() && out.back().var == s.var) {
      out.back().exp += s.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return w;
}

Word Word::variable(std::uint32_t var, std::int64_t exp) {
  const Syllable s{var, exp};
  return from_syllables(std::span<const Syllable>(&s, 1));
}

std::uint32_t Word::arity() const {
  std::uint32_t d = 0;
  for (const auto& s : syllables_) d = std::max(d, s.var);
  return d;
}

std::uint64_t Word::length() const {
  std::uint64_t n = 0;
  for (const auto& s : syllables_) n += static_cast<std::uint64_t>(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

std::string Word::str() const {
  std::string out;
  for (const auto& s : syllables_) {
    if (!out.empty()) out += '*';
    out += 'x';
    out += std::to_string(s.var);
    if (s.exp != 1) {
      out += '^';
      out += std::to_string(s.exp);
    }
  }
  return out;
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  Word parse() {
    std::vector<Syllable> raw;
    skip_space();
    if (at_end()) return Word{};
    raw.push_back(term());
    while (true) {
      const std::size_t before = pos_;
      skip_space();
      if (at_end()) break;
      if (text_[pos_] == '*') {
        ++pos_;
        skip_space();
        if (at_end()) throw ParseError("expected term after '*'", pos_);
      } else if (pos_ == before) {
        throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
      }
      raw.push_back(term());
    }
    return Word::from_syllables(raw);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::uint64_t digits(const char* what) {
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10) {
        throw ParseError(std::string(what) + " too large", start);
      }
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("expected ") + what, start);
    return value;
  }

  Syllable term() {
    if (at_end() || (text_[pos_] != 'x' && text_[pos_] != 'X')) {
      throw ParseError("expected 'x'", pos_);
    }
    ++pos_;
    const std::size_t index_pos = pos_;
    const std::uint64_t index = digits("variable index");
    if (index == 0 || index > std::numeric_limits<std::uint32_t>::max()) {
      throw ParseError("variable index must be a positive 32-bit integer", index_pos);
    }
    std::int64_t exp = 1;
    if (!at_end() && text_[pos_] == '^') {
      ++pos_;
      bool negative = false;
      if (!at_end() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      const std::size_t exp_pos = pos_;
      const auto magnitude = static_cast<std::int64_t>(digits("exponent"));
      if (magnitude == 0) throw ParseError("exponent must be nonzero", exp_pos);
      exp = negative ? -magnitude : magnitude;
    }
    return Syllable{static_cast<std::uint32_t>(index), exp};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).parse(); }

Word invert(const Word& w) {
  std::vector<Syllable> out(w.syllables().rbegin(), w.syllables().rend());
  for (auto& s : out) s.exp = -s.exp;
  return Word::from_syllables(out);
}

Word concat(const Word& a, const Word& b) {
  std::vector<Syllable> raw = a.syllables();
  raw.insert(raw.end(), b.syllables().begin(), b.syllables().end());
  return Word::from_syllables(raw);
}

Word power(const Word& w, std::int64_t exponent) {
  const Word base = exponent < 0 ? invert(w) : w;
  std::uint64_t k = exponent < 0 ? static_cast<std::uint64_t>(-(exponent + 1)) + 1
                                 : static_cast<std::uint64_t>(exponent);
  // Square-and-multiply keeps intermediate reductions short.
  Word result, sq = base;
  while (k > 0) {
    if (k & 1U) result = concat(result, sq);
    k >>= 1U;
    if (k > 0) sq = concat(sq, sq);
  }
  return result;
}

Word substitute(const Word& w, std::span<const Word> images) {
  if (images.size() < w.arity()) {
    throw std::invalid_argument("substitute: " + std::to_string(images.size()) +
                                " images for a word of arity " + std::to_string(w.arity()));
  }
  Word out;
  for (const auto& s : w.syllables()) out = concat(out, power(images[s.var - 1], s.exp));
  return out;
}

Word shift_variables(const Word& w, std::uint32_t offset) {
  std::vector<Syllable> out = w.syllables();
  for (auto& s : out) s.var += offset;
  return Word::from_syllables(out);
}

Word derived_word(const Word& w) { return derived_word(w, w.arity()); }

Word derived_word(const Word& w, std::uint32_t d) {
  if (d < w.arity()) {
    throw std::invalid_argument("derived_word: d = " + std::to_string(d) +
                                " is below the word arity " + std::to_string(w.arity()));
  }
  std::vector<Word> images;
  images.reserve(d);
  for (std::uint32_t i = 1; i <= d; ++i) {
    const Syllable parts[] = {{i, -1}, {d + i, 1}, {2 * d + i, 1}};
    images.push_back(Word::from_syllables(parts));
  }
  const Word lhs = substitute(w, images);
  const Word wy = shift_variables(w, d);
  const Word wz = shift_variables(w, 2 * d);
  return concat(concat(concat(lhs, invert(wz)), invert(wy)), w);
}

bool is_nontrivial_derived(const Word& w) { return !derived_word(w).empty(); }

}  // namespace wordlab
