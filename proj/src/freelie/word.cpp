#include "grtk/freelie/word.hpp"

#include <stdexcept>

namespace grtk::freelie {

Word Word::letter(int a) {
  if (a < 0 || a >= kMaxLetters) throw std::invalid_argument("Word: letter out of range");
  Word w;
  w.bits_ = static_cast<std::uint64_t>(a) << 60;
  w.len_ = 1;
  return w;
}

Word Word::from_letters(const std::vector<int>& letters) {
  if (letters.size() > static_cast<std::size_t>(kMaxLength)) throw std::invalid_argument("Word: too long");
  Word w;
  for (int a : letters) w = w + letter(a);
  return w;
}

std::vector<int> Word::letters() const {
  std::vector<int> out(len_);
  for (int i = 0; i < len_; ++i) out[i] = (*this)[i];
  return out;
}

Word Word::prefix(int n) const {
  if (n < 0 || n > len_) throw std::out_of_range("Word::prefix");
  Word w;
  w.len_ = static_cast<std::uint8_t>(n);
  w.bits_ = n == 0 ? 0 : (bits_ & (~std::uint64_t{0} << (64 - 4 * n)));
  return w;
}

Word Word::suffix_from(int i) const {
  if (i < 0 || i > len_) throw std::out_of_range("Word::suffix_from");
  Word w;
  w.len_ = static_cast<std::uint8_t>(len_ - i);
  w.bits_ = i == 16 ? 0 : bits_ << (4 * i);
  return w;
}

Word operator+(const Word& a, const Word& b) {
  if (a.len_ + b.len_ > Word::kMaxLength) throw std::length_error("Word: concatenation exceeds 16 letters");
  Word w;
  w.len_ = static_cast<std::uint8_t>(a.len_ + b.len_);
  w.bits_ = a.len_ == 16 ? a.bits_ : (a.bits_ | (b.bits_ >> (4 * a.len_)));
  return w;
}

std::string letter_symbol(int a) {
  if (a < 9) return std::string(1, static_cast<char>('1' + a));
  return std::string(1, static_cast<char>('a' + (a - 9)));
}

std::string word_string(const Word& w) {
  std::string s;
  for (int i = 0; i < w.size(); ++i) s += letter_symbol(w[i]);
  return s;
}

Word parse_word(std::string_view s) {
  std::vector<int> letters;
  for (char ch : s) {
    if (ch >= '1' && ch <= '9') {
      letters.push_back(ch - '1');
    } else if (ch >= 'a' && ch <= 'g') {
      letters.push_back(9 + (ch - 'a'));
    } else {
      throw std::invalid_argument("parse_word: bad letter '" + std::string(1, ch) + "'");
    }
  }
  return Word::from_letters(letters);
}

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (int i = 1; i < w.size(); ++i)
    if (!(w < w.suffix_from(i))) return false;
  return true;
}

std::vector<Word> lyndon_basis(int alphabet_size, int weight) {
  if (alphabet_size < 1 || weight < 1) throw std::invalid_argument("lyndon_basis: need alphabet >= 1, weight >= 1");
  if (alphabet_size > Word::kMaxLetters || weight > Word::kMaxLength)
    throw std::invalid_argument("lyndon_basis: exceeds packed word capacity");
  // Duval: successive Lyndon words of length <= weight in lexicographic order.
  std::vector<Word> out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    if (static_cast<int>(w.size()) == weight) out.push_back(Word::from_letters(w));
    std::size_t m = w.size();
    while (static_cast<int>(w.size()) < weight) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == alphabet_size - 1) w.pop_back();
  }
  return out;
}

std::uint64_t witt_dimension(int m, int d) {
  if (m < 1 || d < 1) throw std::invalid_argument("witt_dimension: need alphabet >= 1, weight >= 1");
  auto mobius = [](int k) {
    int result = 1;
    for (int p = 2; p * p <= k; ++p) {
      if (k % p) continue;
      k /= p;
      if (k % p == 0) return 0;
      result = -result;
    }
    return k > 1 ? -result : result;
  };
  auto ipow = [](std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
  };
  std::int64_t sum = 0;
  for (int k = 1; k <= d; ++k)
    if (d % k == 0) sum += mobius(k) * static_cast<std::int64_t>(ipow(static_cast<std::uint64_t>(m), d / k));
  return static_cast<std::uint64_t>(sum / d);
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2) throw std::invalid_argument("standard_factorization: need length >= 2");
  for (int i = 1; i < w.size(); ++i) {
    Word v = w.suffix_from(i);
    if (is_lyndon(v)) return {w.prefix(i), v};
  }
  throw std::logic_error("standard_factorization: unreachable");
}

std::string default_letter_name(int a) { return std::to_string(a + 1); }

std::string bracket_string(const Word& w, const LetterNamer& name) {
  if (w.size() == 1) return name(w[0]);
  auto [u, v] = standard_factorization(w);
  return "[" + bracket_string(u, name) + "," + bracket_string(v, name) + "]";
}

}  // namespace grtk::freelie
