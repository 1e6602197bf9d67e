#include <random>

#include "doctest.h"
#include "grtk/dk/dk.hpp"
#include "grtk/freelie/lie.hpp"

using namespace grtk::dk;
using grtk::exactla::Rational;
using grtk::freelie::AssocPoly;
using grtk::freelie::LieElement;
using grtk::freelie::Word;

namespace {

// Substitutes each letter by a linear combination of letters at the associative level,
// then rewrites in the Lyndon basis. Independent of LieHom's recursive evaluation.
LieElement substitute(const LieElement& x, const std::vector<std::vector<std::pair<int, Rational>>>& letter_images) {
  AssocPoly acc;
  for (const auto& [w, c] : grtk::freelie::expand(x)) {
    std::vector<std::pair<std::vector<int>, Rational>> partial{{{}, c}};
    for (int a : w.letters()) {
      std::vector<std::pair<std::vector<int>, Rational>> next;
      for (const auto& [pre, k] : partial)
        for (const auto& [b, y] : letter_images[static_cast<std::size_t>(a)]) {
          auto v = pre;
          v.push_back(b);
          next.emplace_back(v, k * y);
        }
      partial = std::move(next);
    }
    for (const auto& [v, k] : partial) acc.emplace_back(Word::from_letters(v), k);
  }
  return grtk::freelie::from_assoc(x.weight(), acc);
}

std::vector<std::vector<std::pair<int, Rational>>> pull_letters(const SetMap& g) {
  // t_ij of g's target -> sum of t_pq over the fibres
  std::vector<std::vector<std::pair<int, Rational>>> out;
  const int n = g.target(), m = g.source();
  for (int a = 0; a < num_generators(n); ++a) {
    auto [i, j] = generator_points(n, a);
    std::vector<std::pair<int, Rational>> img;
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q)
        if (g.defined(p) && g.defined(q) && g(p) == i && g(q) == j) img.emplace_back(generator_index(m, p, q), Rational(1));
    out.push_back(img);
  }
  return out;
}

std::vector<std::vector<std::pair<int, Rational>>> push_letters(const SetMap& f) {
  std::vector<std::vector<std::pair<int, Rational>>> out;
  for (int a = 0; a < num_generators(f.source()); ++a) {
    auto [i, j] = generator_points(f.source(), a);
    out.push_back({{generator_index(f.target(), f(i), f(j)), Rational(1)}});
  }
  return out;
}

SetMap random_total(std::mt19937& rng, int n, int m) {
  std::vector<int> im;
  for (int p = 0; p < n; ++p) im.push_back(static_cast<int>(rng() % static_cast<unsigned>(m)));
  return SetMap(n, m, im);
}

SetMap random_injection(std::mt19937& rng, int n, int m) {
  std::vector<int> pts(static_cast<std::size_t>(m));
  std::iota(pts.begin(), pts.end(), 0);
  std::shuffle(pts.begin(), pts.end(), rng);
  pts.resize(static_cast<std::size_t>(n));
  return SetMap(n, m, pts);
}

SetMap random_partial(std::mt19937& rng, int n, int m) {
  std::vector<int> im;
  for (int p = 0; p < n; ++p) im.push_back(rng() % 3 == 0 ? SetMap::kUndefined : static_cast<int>(rng() % static_cast<unsigned>(m)));
  return SetMap(n, m, im);
}

DKElement random_element(std::mt19937& rng, int n, int w) {
  auto b = dk_basis(n, w);
  std::vector<Rational> c;
  for (std::size_t k = 0; k < b->dim(); ++k) c.emplace_back(static_cast<long long>(rng() % 7) - 3);
  return DKElement(b, c);
}

DKElement basis_element(int n, int w, std::size_t k) {
  auto b = dk_basis(n, w);
  std::vector<Rational> c(b->dim());
  c[k] = Rational(1);
  return DKElement(b, c);
}

}  // namespace

TEST_CASE("generator indexing") {
  CHECK(num_generators(4) == 6);
  CHECK(generator_index(4, 0, 1) == 0);
  CHECK(generator_index(4, 2, 3) == 5);
  CHECK(generator_index(4, 3, 1) == generator_index(4, 1, 3));
  CHECK(generator_name(3, 2) == "t23");
  for (int a = 0; a < 10; ++a) {
    auto [i, j] = generator_points(5, a);
    CHECK(generator_index(5, i, j) == a);
  }
}

TEST_CASE("dk_basis examples") {
  CHECK(dk_basis(2, 1)->dim() == 1);
  CHECK(dk_basis(3, 1)->dim() == 3);
  CHECK(dk_basis(3, 2)->dim() == 1);
  CHECK(dk_basis(3, 2)->ideal_rank() == 2);
  CHECK(dk_basis(1, 1)->dim() == 0);
  CHECK(dk_basis(0, 3)->dim() == 0);
  CHECK(dk_basis(3, 1)->representative_strings() == std::vector<std::string>{"t12", "t13", "t23"});
  // lexicographically smallest Lyndon word survives
  CHECK(dk_basis(3, 2)->representative_strings() == std::vector<std::string>{"[t12,t13]"});
}

TEST_CASE("dimension oracle: sum of free Lie dimensions") {
  for (int n = 2; n <= 5; ++n)
    for (int w = 1; w <= 5; ++w) {
      std::uint64_t expect = 0;
      for (int k = 1; k < n; ++k) expect += grtk::freelie::witt_dimension(k, w);
      CHECK(dk_basis(n, w)->dim() == expect);
    }
}

TEST_CASE("ideal recursion agrees with a brute-force ideal span") {
  for (int n = 3; n <= 4; ++n) {
    auto rel = relators(n);
    const int N = num_generators(n);
    for (int w = 3; w <= 4; ++w) {
      auto b = dk_basis(n, w);
      grtk::exactla::SpanEchelon ech(b->free_basis().size(), grtk::exactla::SpanEchelon::PivotOrder::Lowest);
      // All brackets of relators with free basis elements in every position: [u, r], [[u, r], v], [u, [v, r]], [[u, v], r].
      std::vector<std::vector<LieElement>> free(static_cast<std::size_t>(w));
      for (int k = 1; k <= w - 2; ++k)
        for (const auto& word : grtk::freelie::lyndon_basis(N, k)) free[static_cast<std::size_t>(k)].push_back(LieElement::basis(word));
      for (const auto& r : rel) {
        if (w == 3) {
          for (const auto& u : free[1]) ech.insert(b->free_coords(bracket(r, u)));
        } else {
          for (const auto& u : free[2]) ech.insert(b->free_coords(bracket(u, r)));
          for (const auto& u : free[1])
            for (const auto& v : free[1]) {
              ech.insert(b->free_coords(bracket(bracket(u, r), v)));
              ech.insert(b->free_coords(bracket(u, bracket(v, r))));
            }
        }
      }
      CHECK(ech.rank() == b->ideal_rank());
    }
  }
}

TEST_CASE("projection is the identity on representatives and kills the ideal") {
  auto b = dk_basis(4, 3);
  const auto& P = b->projection();
  for (std::size_t k = 0; k < b->dim(); ++k) {
    auto col = P.apply(grtk::exactla::SparseVec::unit(b->representatives()[k]));
    CHECK(col == grtk::exactla::SparseVec::unit(k));
  }
  for (std::size_t p : b->ideal().pivots()) CHECK(P.apply(b->ideal().row_for(p)).empty());
}

TEST_CASE("dilation") {
  std::mt19937 rng(1);
  auto a = random_element(rng, 3, 2);
  CHECK(dilation(Rational(1), a) == a);
  CHECK(dilation(Rational(0), a).is_zero());
  CHECK(dilation(Rational(2), a) == Rational(4) * a);
}

TEST_CASE("direct_image examples") {
  auto f = SetMap::from_one_based(3, {1, 3});
  CHECK(direct_image(f, DKElement::t(2, 1, 2)) == DKElement::t(3, 1, 3));
  std::mt19937 rng(3);
  auto a = random_element(rng, 3, 3);
  CHECK(direct_image(SetMap::identity(3), a) == a);
  auto inc = SetMap::increasing_injection(4, {1, 2, 3});
  auto x = bracket(DKElement::t(3, 1, 2), DKElement::t(3, 2, 3));
  CHECK(direct_image(inc, x) == bracket(DKElement::t(4, 1, 2), DKElement::t(4, 2, 3)));
  CHECK_THROWS_AS(direct_image(SetMap::from_one_based(2, {1, 1}), DKElement::t(2, 1, 2)), std::invalid_argument);
}

TEST_CASE("inverse_image examples") {
  auto f = SetMap::from_one_based(2, {1, 1, 2});
  CHECK(inverse_image(f, DKElement::t(2, 1, 2)) == DKElement::t(3, 1, 3) + DKElement::t(3, 2, 3));
  auto t = DKElement::t(2, 1, 2);
  CHECK(inverse_image(f, bracket(t, t)).is_zero());
  auto sigma = SetMap::from_one_based(3, {2, 3, 1});
  CHECK(inverse_image(sigma, DKElement::t(3, 2, 3)) == DKElement::t(3, 1, 2));
}

TEST_CASE("partial_pullback examples and the factorization through the domain") {
  auto f = SetMap::from_one_based(2, {1, 0, 2});
  CHECK(partial_pullback(f, DKElement::t(2, 1, 2)) == DKElement::t(3, 1, 3));
  auto bij = SetMap::from_one_based(2, {2, 1});
  CHECK(partial_pullback(bij, DKElement::t(2, 1, 2)) == inverse_image(bij, DKElement::t(2, 1, 2)));
  auto empty = SetMap::from_one_based(2, {0, 0, 0});
  CHECK(partial_pullback(empty, DKElement::t(2, 1, 2)).is_zero());

  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4), m = 2 + static_cast<int>(rng() % 3);
    auto g = random_partial(rng, n, m);
    int w = 1 + static_cast<int>(rng() % 3);
    auto a = random_element(rng, m, w);
    // literal factorization: restrict, pull back, include
    auto dom = g.domain();
    std::vector<int> inc_im(dom.begin(), dom.end());
    SetMap inc(static_cast<int>(dom.size()), n, inc_im);
    auto pulled = inverse_image(g.restrict_to_domain(), a);
    CHECK(partial_pullback(g, a) == direct_image(inc, pulled));
  }
}

TEST_CASE("relation preservation under random maps") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4), m = n + static_cast<int>(rng() % static_cast<unsigned>(6 - n));
    auto f = random_injection(rng, n, m);
    for (const auto& r : relators(n)) CHECK(DKElement::from_free(m, substitute(r, push_letters(f))).is_zero());
    int k = 2 + static_cast<int>(rng() % 4);
    auto g = random_total(rng, k, n);
    for (const auto& r : relators(n)) {
      auto img = substitute(r, pull_letters(g));
      CHECK((img.is_zero() || DKElement::from_free(k, img).is_zero()));
    }
    auto h = random_partial(rng, k, n);
    for (const auto& r : relators(n)) {
      auto img = substitute(r, pull_letters(h));
      CHECK((img.is_zero() || DKElement::from_free(k, img).is_zero()));
    }
  }
}

TEST_CASE("homomorphisms agree with free-level substitution") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3), m = 2 + static_cast<int>(rng() % 3);
    int w = 1 + static_cast<int>(rng() % 4);
    auto g = random_total(rng, m, n);
    auto a = random_element(rng, n, w);
    auto expect = substitute(dk_basis(n, w)->lift(a.coords()), pull_letters(g));
    auto got = inverse_image(g, a);
    CHECK(got == (expect.is_zero() ? DKElement::zero(m, w) : DKElement::from_free(m, expect)));
  }
}

TEST_CASE("functoriality") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    int a = 2 + static_cast<int>(rng() % 2), b = a + static_cast<int>(rng() % 2), c = b + static_cast<int>(rng() % 2);
    auto f = random_injection(rng, a, b), g = random_injection(rng, b, c);
    for (int w = 1; w <= 3; ++w)
      for (std::size_t k = 0; k < dk_basis(a, w)->dim(); ++k) {
        auto x = basis_element(a, w, k);
        CHECK(direct_image(g.after(f), x) == direct_image(g, direct_image(f, x)));
      }
    int p = 2 + static_cast<int>(rng() % 3), q = 2 + static_cast<int>(rng() % 3), r = 2 + static_cast<int>(rng() % 3);
    auto u = random_total(rng, p, q), v = random_total(rng, q, r);
    for (int w = 1; w <= 3; ++w)
      for (std::size_t k = 0; k < dk_basis(r, w)->dim(); ++k) {
        auto x = basis_element(r, w, k);
        CHECK(inverse_image(v.after(u), x) == inverse_image(u, inverse_image(v, x)));
      }
  }
}

TEST_CASE("dk_compose") {
  // X = [2], insert Y = {3,4} at 2: Z = {1,3,4} relabeled 1,2,3.
  auto out = dk_compose(2, 1, 2, DKElement::t(2, 1, 2), std::nullopt);
  CHECK(out == DKElement::t(3, 1, 2) + DKElement::t(3, 1, 3));
  auto pushed = dk_compose(2, 1, 2, std::nullopt, DKElement::t(2, 1, 2));
  CHECK(pushed == DKElement::t(3, 2, 3));
  CHECK(dk_compose(2, 1, 2, DKElement::t(2, 1, 2), DKElement::t(2, 1, 2)) == out + pushed);
  // unit: inserting into a one-point set relabels nothing
  std::mt19937 rng(2);
  auto a = random_element(rng, 3, 2);
  CHECK(dk_compose(1, 0, 3, std::nullopt, a) == a);
  CHECK(dk_compose(3, 2, 1, a, std::nullopt) == a);
  CHECK_THROWS_AS(dk_compose(2, 2, 2, DKElement::t(2, 1, 2), std::nullopt), std::invalid_argument);
}

TEST_CASE("check_commutation examples") {
  auto f = SetMap::from_one_based(4, {3, 4});
  auto g = SetMap::from_one_based(2, {1, 1, 2, 2});
  auto res = check_commutation(f, g, 3);
  CHECK(res.ok);
  CHECK(res.pairs_checked > 0);
  // the displayed instance
  auto lhs = bracket(DKElement::t(4, 3, 4), DKElement::t(4, 1, 3) + DKElement::t(4, 1, 4) + DKElement::t(4, 2, 3) + DKElement::t(4, 2, 4));
  CHECK(lhs.is_zero());
  CHECK(check_commutation(SetMap::from_one_based(4, {2}), g, 3).ok);
  CHECK(check_commutation(f, SetMap::from_one_based(1, {1, 1, 1, 1}), 4).ok);
  CHECK_THROWS_AS(check_commutation(SetMap::from_one_based(4, {1, 3}), g, 3), ClaimHypothesisError);
}

TEST_CASE("commutation fails without its hypothesis") {
  // A witness exists once g separates the image of f, confirming the check has teeth.
  auto f = SetMap::from_one_based(3, {1, 2});
  auto g = SetMap::identity(3);
  auto u = direct_image(f, DKElement::t(2, 1, 2));
  auto v = inverse_image(g, DKElement::t(3, 2, 3));
  CHECK_FALSE(bracket(u, v).is_zero());
}
