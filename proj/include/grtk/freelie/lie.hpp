#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "grtk/exactla/rational.hpp"
#include "grtk/freelie/word.hpp"

namespace grtk::freelie {

using exactla::Rational;

/// Element of the free associative algebra: sorted (word, coefficient) pairs.
template <typename Coeff>
using Poly = std::vector<std::pair<Word, Coeff>>;

using IntPoly = Poly<std::int64_t>;
using AssocPoly = Poly<Rational>;

/// Homogeneous element of a free Lie algebra in the Lyndon basis.
class LieElement {
 public:
  using Term = std::pair<Word, Rational>;

  LieElement() = default;
  explicit LieElement(int weight) : weight_(weight) {}
  /// Terms must all be Lyndon words of length `weight`; duplicates merge, zeros drop.
  LieElement(int weight, std::vector<Term> terms);

  static LieElement generator(int letter) { return basis(Word::letter(letter)); }
  static LieElement basis(const Word& lyndon, const Rational& c = Rational(1));

  [[nodiscard]] int weight() const { return weight_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Rational coeff(const Word& w) const;

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Rational& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& c, LieElement a) { return a *= c; }
  LieElement operator-() const { return Rational(-1) * *this; }

  /// Zero elements compare equal regardless of their recorded weight.
  friend bool operator==(const LieElement& a, const LieElement& b) {
    return a.terms_ == b.terms_ && (a.terms_.empty() || a.weight_ == b.weight_);
  }

  /// "3/2·[1,[1,2]] - [1,[2,2]]"; "0" for the zero element.
  [[nodiscard]] std::string to_string(const LetterNamer& name = default_letter_name) const;

 private:
  int weight_ = 0;
  std::vector<Term> terms_;
};

/// Standard bracketing of a Lyndon word expanded in the free associative algebra (cached).
const IntPoly& lyndon_expansion(const Word& lyndon);

/// Bracket of two Lyndon basis elements in the Lyndon basis (cached, thread-safe).
const IntPoly& bracket_words(const Word& u, const Word& v);

LieElement bracket(const LieElement& x, const LieElement& y);

/// Associative expansion of a Lie element.
AssocPoly expand(const LieElement& x);

/// Rewrites a Lie polynomial given in associative form in the Lyndon basis.
/// Throws std::invalid_argument if the polynomial is not a Lie element.
LieElement from_assoc(int weight, AssocPoly p);

/// Image under the letter substitution a -> letter_map[a].
LieElement relabel(const LieElement& x, const std::vector<int>& letter_map);

/// Left-normed bracket [[..[e_{s0}, e_{s1}], ...], e_{s(k-1)}].
LieElement left_normed(const std::vector<int>& letters);

/// Basis of the multilinear part of the free Lie algebra on n letters:
/// left-normed brackets starting with letter 0, remaining letters in lexicographic permutation order.
std::vector<LieElement> multilinear_basis(int n);

}  // namespace grtk::freelie
