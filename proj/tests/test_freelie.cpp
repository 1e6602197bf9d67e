#include <random>
#include <set>

#include "doctest.h"
#include "grtk/exactla/sparse.hpp"
#include "grtk/freelie/lie.hpp"
#include "grtk/freelie/perm.hpp"

using namespace grtk::freelie;
using grtk::exactla::Rational;

namespace {

// Brute force: every word of the length, filtered by the definition of a Lyndon word.
std::size_t lyndon_count_brute(int m, int d) {
  std::size_t total = 1, count = 0;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(m);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> l(static_cast<std::size_t>(d));
    std::size_t c = code;
    for (int i = d - 1; i >= 0; --i) {
      l[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::size_t>(m));
      c /= static_cast<std::size_t>(m);
    }
    // strictly smaller than each proper rotation and aperiodic <=> smaller than every proper suffix
    bool ok = true;
    for (int s = 1; s < d && ok; ++s) {
      std::vector<int> suf(l.begin() + s, l.end());
      ok = std::lexicographical_compare(l.begin(), l.end(), suf.begin(), suf.end()) ? true : false;
      if (ok) ok = !(std::equal(suf.begin(), suf.end(), l.begin()));
    }
    if (ok) ++count;
  }
  return count;
}

// Naive associative product on std::map, independent of the library's polynomial code.
std::map<std::vector<int>, Rational> assoc_map(const AssocPoly& p) {
  std::map<std::vector<int>, Rational> m;
  for (const auto& [w, c] : p) m[w.letters()] += c;
  std::erase_if(m, [](const auto& kv) { return kv.second.is_zero(); });
  return m;
}

std::map<std::vector<int>, Rational> commutator_map(const std::map<std::vector<int>, Rational>& a,
                                                    const std::map<std::vector<int>, Rational>& b) {
  std::map<std::vector<int>, Rational> out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      auto uv = u, vu = v;
      uv.insert(uv.end(), v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      out[uv] += x * y;
      out[vu] -= x * y;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

LieElement random_element(std::mt19937& rng, int alphabet, int weight) {
  auto basis = lyndon_basis(alphabet, weight);
  std::vector<LieElement::Term> terms;
  std::uniform_int_distribution<int> coin(0, 2), val(-3, 3);
  for (const auto& w : basis)
    if (coin(rng) == 0) terms.emplace_back(w, Rational(val(rng)));
  return LieElement(weight, terms);
}

}  // namespace

TEST_CASE("lyndon_basis examples") {
  auto b21 = lyndon_basis(2, 1);
  REQUIRE(b21.size() == 2);
  CHECK(word_string(b21[0]) == "1");
  CHECK(word_string(b21[1]) == "2");
  auto b22 = lyndon_basis(2, 2);
  REQUIRE(b22.size() == 1);
  CHECK(word_string(b22[0]) == "12");
  auto b23 = lyndon_basis(2, 3);
  REQUIRE(b23.size() == 2);
  CHECK(word_string(b23[0]) == "112");
  CHECK(word_string(b23[1]) == "122");
}

TEST_CASE("witt_dimension examples") {
  CHECK(witt_dimension(1, 2) == 0);
  CHECK(witt_dimension(2, 3) == 2);
  CHECK(witt_dimension(3, 2) == 3);
  CHECK(witt_dimension(1, 1) == 1);
}

TEST_CASE("lyndon counts agree with witt and brute force") {
  for (int m = 1; m <= 4; ++m)
    for (int d = 1; d <= 8; ++d) {
      auto basis = lyndon_basis(m, d);
      CHECK(basis.size() == witt_dimension(m, d));
      CHECK(std::is_sorted(basis.begin(), basis.end()));
      for (const auto& w : basis) CHECK(is_lyndon(w));
      if (d <= 6) CHECK(basis.size() == lyndon_count_brute(m, d));
    }
}

TEST_CASE("word packing") {
  Word w = parse_word("1231");
  CHECK(w.size() == 4);
  CHECK(word_string(w.prefix(2)) == "12");
  CHECK(word_string(w.suffix_from(1)) == "231");
  CHECK(word_string(w.prefix(2) + w.suffix_from(2)) == "1231");
  CHECK(parse_word("1") < parse_word("12"));
  CHECK(parse_word("12") < parse_word("2"));
  auto [u, v] = standard_factorization(parse_word("112"));
  CHECK(word_string(u) == "1");
  CHECK(word_string(v) == "12");
  CHECK(bracket_string(parse_word("1122")) == "[1,[[1,2],2]]");
  CHECK(bracket_string(parse_word("112")) == "[1,[1,2]]");
}

TEST_CASE("bracket examples") {
  auto e1 = LieElement::generator(0), e2 = LieElement::generator(1);
  CHECK(bracket(e1, e1).is_zero());
  auto b = bracket(e1, e2);
  CHECK(b == LieElement::basis(parse_word("12")));
  CHECK(b.to_string() == "[1,2]");
  auto c = bracket(b, e1);
  CHECK(c == LieElement::basis(parse_word("112"), Rational(-1)));
  CHECK(c.to_string() == "-[1,[1,2]]");
  CHECK((Rational(3, 2) * LieElement::basis(parse_word("112"))).to_string() == "3/2·[1,[1,2]]");
}

TEST_CASE("bracket matches the associative commutator, antisymmetry and Jacobi") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 2 + static_cast<int>(rng() % 3);
    int a = 1 + static_cast<int>(rng() % 2), b = 1 + static_cast<int>(rng() % 2), c = 1 + static_cast<int>(rng() % 1);
    auto x = random_element(rng, m, a), y = random_element(rng, m, b), z = random_element(rng, m, c);
    auto xy = bracket(x, y);
    CHECK(assoc_map(expand(xy)) == commutator_map(assoc_map(expand(x)), assoc_map(expand(y))));
    CHECK(bracket(y, x) == -xy);
    auto jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    CHECK(jac.is_zero());
    CHECK(x.weight() + y.weight() + z.weight() <= 5);
  }
}

TEST_CASE("relabel and from_assoc") {
  auto e = bracket(LieElement::generator(0), LieElement::generator(1));
  // swap letters: [2,1] = -[1,2]
  CHECK(relabel(e, {1, 0}) == -e);
  AssocPoly bad{{parse_word("12"), Rational(1)}};
  CHECK_THROWS_AS(from_assoc(2, bad), std::invalid_argument);
}

TEST_CASE("multilinear_basis sizes and independence") {
  CHECK(multilinear_basis(1).size() == 1);
  CHECK(multilinear_basis(1)[0] == LieElement::generator(0));
  auto b2 = multilinear_basis(2);
  REQUIRE(b2.size() == 1);
  CHECK(b2[0] == bracket(LieElement::generator(0), LieElement::generator(1)));
  CHECK(multilinear_basis(3).size() == 2);
  for (int n = 1; n <= 5; ++n) {
    auto basis = multilinear_basis(n);
    CHECK(basis.size() == (std::size_t[]){1, 1, 2, 6, 24}[n - 1]);
    // Coordinates over permutations: rank must equal the size.
    std::vector<grtk::exactla::SparseVec> cols;
    for (const auto& x : basis) {
      PermutationVector pv;
      pv.n = n;
      for (const auto& [w, c] : expand(x)) pv.add(w.letters(), c);
      cols.push_back(pv.to_sparse());
    }
    auto m = grtk::exactla::SparseMatrix::from_columns(all_perms(n).size(), cols);
    CHECK(grtk::exactla::rank(m) == basis.size());
  }
}

TEST_CASE("shuffle_subspace dimensions") {
  CHECK(shuffle_subspace(1).empty());
  auto s2 = shuffle_subspace(2);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].to_string() == "(12) + (21)");
  CHECK(shuffle_subspace(3).size() == 4);
  std::size_t fact = 1;
  for (int n = 1; n <= 5; ++n) {
    fact *= static_cast<std::size_t>(n);
    CHECK(fact - shuffle_subspace(n).size() == fact / static_cast<std::size_t>(n));
  }
}

TEST_CASE("multilinear Lie elements are orthogonal to shuffles") {
  // Ree: the pairing sum_w x_w s_w vanishes for Lie x and shuffle s.
  for (int n = 2; n <= 5; ++n) {
    auto sh = shuffle_subspace(n);
    for (const auto& x : multilinear_basis(n)) {
      for (const auto& s : sh) {
        Rational pairing(0);
        for (const auto& [w, c] : expand(x)) {
          auto it = s.coeffs.find(w.letters());
          if (it != s.coeffs.end()) pairing += c * it->second;
        }
        CHECK(pairing.is_zero());
      }
    }
  }
}

TEST_CASE("permutation helpers") {
  Perm p = parse_perm("231");
  CHECK(perm_string(inverse(p)) == "312");
  CHECK(compose(p, inverse(p)) == identity_perm(3));
  CHECK(perm_sign(p) == 1);
  CHECK(perm_sign(parse_perm("213")) == -1);
  for (std::size_t i = 0; i < all_perms(4).size(); ++i) CHECK(perm_index(all_perms(4)[i]) == i);
  auto s = shuffle_sum({0}, {1, 2}, true);
  CHECK(s.to_string() == "(123) - (213) + (231)");
}
