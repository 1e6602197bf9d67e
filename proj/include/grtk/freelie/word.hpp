#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grtk::freelie {

/// A word of at most 16 letters over an alphabet of at most 16 letters.
///
/// Letters are 0-based internally and packed four bits each, first letter in
/// the most significant nibble. Comparing (bits, len) is then exactly the
/// lexicographic order in which a proper prefix precedes its extensions.
class Word {
 public:
  static constexpr int kMaxLength = 16;
  static constexpr int kMaxLetters = 16;

  Word() = default;
  static Word letter(int a);
  static Word from_letters(const std::vector<int>& letters);

  [[nodiscard]] int size() const { return len_; }
  [[nodiscard]] bool empty() const { return len_ == 0; }
  [[nodiscard]] int operator[](int i) const { return static_cast<int>((bits_ >> (60 - 4 * i)) & 0xF); }
  [[nodiscard]] std::vector<int> letters() const;
  [[nodiscard]] Word prefix(int n) const;
  [[nodiscard]] Word suffix_from(int i) const;
  [[nodiscard]] std::uint64_t bits() const { return bits_; }

  friend Word operator+(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    return a.len_ <=> b.len_;
  }

 private:
  std::uint64_t bits_ = 0;
  std::uint8_t len_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.bits() * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(w.size()));
  }
};

/// Prints a single 0-based letter as a 1-based symbol: 1..9, then a, b, c...
std::string letter_symbol(int a);
/// "112" style rendering of a word.
std::string word_string(const Word& w);
/// Inverse of word_string.
Word parse_word(std::string_view s);

bool is_lyndon(const Word& w);

/// All Lyndon words of the given length, in lexicographic order (Duval's generation).
std::vector<Word> lyndon_basis(int alphabet_size, int weight);

/// Necklace-polynomial dimension of the weight-d part of the free Lie algebra on m letters.
std::uint64_t witt_dimension(int alphabet_size, int weight);

/// (u, v) with w = uv and v the longest proper Lyndon suffix.
std::pair<Word, Word> standard_factorization(const Word& w);

/// Names a 0-based letter when printing bracket expressions.
using LetterNamer = std::function<std::string(int)>;
std::string default_letter_name(int a);

/// Standard bracketing of a Lyndon word, e.g. "[1,[1,2]]".
std::string bracket_string(const Word& lyndon, const LetterNamer& name = default_letter_name);

}  // namespace grtk::freelie
