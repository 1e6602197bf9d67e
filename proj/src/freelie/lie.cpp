#include "grtk/freelie/lie.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace grtk::freelie {
namespace {

template <typename C>
bool is_zero_coeff(const C& c) {
  if constexpr (std::is_same_v<C, Rational>) {
    return c.is_zero();
  } else {
    return c == 0;
  }
}

template <typename C>
void normalize(Poly<C>& p) {
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Poly<C> out;
  out.reserve(p.size());
  for (auto& t : p) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const auto& t) { return is_zero_coeff(t.second); });
  p = std::move(out);
}

template <typename C>
Poly<C> commutator(const Poly<C>& a, const Poly<C>& b) {
  Poly<C> out;
  out.reserve(2 * a.size() * b.size());
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      out.emplace_back(u + v, x * y);
      out.emplace_back(v + u, -(x * y));
    }
  normalize(out);
  return out;
}

struct PairHash {
  std::size_t operator()(const std::pair<Word, Word>& p) const noexcept {
    WordHash h;
    return h(p.first) * 31 + h(p.second);
  }
};

std::shared_mutex g_expansion_mutex;
std::unordered_map<Word, IntPoly, WordHash> g_expansions;
std::shared_mutex g_bracket_mutex;
std::unordered_map<std::pair<Word, Word>, IntPoly, PairHash> g_brackets;

/// Integer Lie polynomial to Lyndon coordinates: the minimal word of a nonzero Lie
/// polynomial is Lyndon and is the leading word of its own standard bracketing.
template <typename C>
Poly<C> lyndon_coordinates(const Poly<C>& p) {
  std::map<Word, C> rest;
  for (const auto& [w, c] : p) rest.emplace(w, c);
  Poly<C> out;
  while (!rest.empty()) {
    auto it = rest.begin();
    Word w = it->first;
    C c = it->second;
    rest.erase(it);
    if (!is_lyndon(w)) throw std::invalid_argument("from_assoc: polynomial is not a Lie element");
    out.emplace_back(w, c);
    const IntPoly& e = lyndon_expansion(w);
    for (std::size_t k = 1; k < e.size(); ++k) {
      auto [jt, inserted] = rest.try_emplace(e[k].first, C(0));
      jt->second -= c * C(e[k].second);
      if (is_zero_coeff(jt->second)) rest.erase(jt);
    }
  }
  return out;
}

}  // namespace

const IntPoly& lyndon_expansion(const Word& w) {
  {
    std::shared_lock lock(g_expansion_mutex);
    auto it = g_expansions.find(w);
    if (it != g_expansions.end()) return it->second;
  }
  if (!is_lyndon(w)) throw std::invalid_argument("lyndon_expansion: not a Lyndon word");
  IntPoly p;
  if (w.size() == 1) {
    p = {{w, 1}};
  } else {
    auto [u, v] = standard_factorization(w);
    p = commutator(lyndon_expansion(u), lyndon_expansion(v));
  }
  if (p.empty() || p.front().first != w || p.front().second != 1)
    throw std::logic_error("lyndon_expansion: leading term invariant violated");
  std::unique_lock lock(g_expansion_mutex);
  return g_expansions.try_emplace(w, std::move(p)).first->second;
}

const IntPoly& bracket_words(const Word& u, const Word& v) {
  const std::pair<Word, Word> key{u, v};
  {
    std::shared_lock lock(g_bracket_mutex);
    auto it = g_brackets.find(key);
    if (it != g_brackets.end()) return it->second;
  }
  IntPoly r;
  if (u != v) {
    if (v < u) {
      r = bracket_words(v, u);
      for (auto& t : r) t.second = -t.second;
    } else {
      r = lyndon_coordinates(commutator(lyndon_expansion(u), lyndon_expansion(v)));
    }
  }
  std::unique_lock lock(g_bracket_mutex);
  return g_brackets.try_emplace(key, std::move(r)).first->second;
}

LieElement::LieElement(int weight, std::vector<Term> terms) : weight_(weight), terms_(std::move(terms)) {
  for (const auto& [w, c] : terms_)
    if (w.size() != weight_) throw std::invalid_argument("LieElement: word of the wrong weight");
  normalize(terms_);
}

LieElement LieElement::basis(const Word& lyndon, const Rational& c) {
  if (!is_lyndon(lyndon)) throw std::invalid_argument("LieElement::basis: not a Lyndon word");
  return LieElement(lyndon.size(), {{lyndon, c}});
}

Rational LieElement::coeff(const Word& w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w, [](const Term& t, const Word& k) { return t.first < k; });
  return it != terms_.end() && it->first == w ? it->second : Rational(0);
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (o.weight_ != weight_) throw std::invalid_argument("LieElement: adding elements of different weights");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize(terms_);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) { return *this += -o; }

LieElement& LieElement::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

std::string LieElement::to_string(const LetterNamer& name) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational a = c;
    if (!first) {
      s += a.sign() < 0 ? " - " : " + ";
      a = a.abs();
    } else if (a == Rational(-1)) {
      s += "-";
      a = Rational(1);
    }
    if (!a.is_one()) s += a.to_string() + "·";
    s += bracket_string(w, name);
    first = false;
  }
  return s;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  const int weight = x.weight() + y.weight();
  std::vector<LieElement::Term> acc;
  for (const auto& [u, a] : x.terms())
    for (const auto& [v, b] : y.terms()) {
      Rational ab = a * b;
      for (const auto& [w, k] : bracket_words(u, v)) acc.emplace_back(w, ab * Rational(k));
    }
  return LieElement(weight, std::move(acc));
}

AssocPoly expand(const LieElement& x) {
  AssocPoly out;
  for (const auto& [u, a] : x.terms())
    for (const auto& [w, k] : lyndon_expansion(u)) out.emplace_back(w, a * Rational(k));
  normalize(out);
  return out;
}

LieElement from_assoc(int weight, AssocPoly p) {
  normalize(p);
  for (const auto& t : p)
    if (t.first.size() != weight) throw std::invalid_argument("from_assoc: inhomogeneous polynomial");
  return LieElement(weight, lyndon_coordinates(p));
}

LieElement relabel(const LieElement& x, const std::vector<int>& letter_map) {
  AssocPoly p = expand(x);
  for (auto& [w, c] : p) {
    std::vector<int> l = w.letters();
    for (int& a : l) a = letter_map.at(static_cast<std::size_t>(a));
    w = Word::from_letters(l);
  }
  return from_assoc(x.weight(), std::move(p));
}

LieElement left_normed(const std::vector<int>& letters) {
  if (letters.empty()) throw std::invalid_argument("left_normed: empty word");
  LieElement x = LieElement::generator(letters[0]);
  for (std::size_t i = 1; i < letters.size(); ++i) x = bracket(x, LieElement::generator(letters[i]));
  return x;
}

std::vector<LieElement> multilinear_basis(int n) {
  if (n < 1) throw std::invalid_argument("multilinear_basis: n >= 1 required");
  std::vector<int> rest(static_cast<std::size_t>(n - 1));
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<LieElement> out;
  do {
    std::vector<int> word{0};
    word.insert(word.end(), rest.begin(), rest.end());
    out.push_back(left_normed(word));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

}  // namespace grtk::freelie
