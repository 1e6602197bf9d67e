#pragma once

#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grtk/exactla/rational.hpp"
#include "grtk/freelie/perm.hpp"

namespace grtk::operadkit {

using exactla::Rational;
using freelie::Perm;

/// Linear combination of basis keys of O([arity]).
template <typename Key>
struct OpElement {
  int arity = 0;
  std::map<Key, Rational> terms;

  void add(const Key& k, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  void add(const OpElement& o, const Rational& c = Rational(1)) {
    for (const auto& [k, d] : o.terms) add(k, c * d);
  }
  [[nodiscard]] bool is_zero() const { return terms.empty(); }
  friend bool operator==(const OpElement&, const OpElement&) = default;
};

/// Operads over the canonical sets [n] = {0..n-1}.
///
/// compose(n, x, m, a, b) realizes ∘_x on basis keys. The result lives on
/// Z = ([n] − {x}) ⊔ [m], numbered with the points of [n] − {x} first (in order)
/// and then the points of [m], as for the Drinfeld–Kohno operad.
/// act(σ, a) is the direct image along a bijection σ of [n].
template <typename O>
concept Operad = requires(const O& o, int n, int x, int m, const typename O::Key& a, const Perm& s) {
  typename O::Key;
  { o.name() } -> std::convertible_to<std::string>;
  { o.basis(n) } -> std::same_as<std::vector<typename O::Key>>;
  { o.degree(a) } -> std::convertible_to<int>;
  { o.compose(n, x, m, a, a) } -> std::same_as<OpElement<typename O::Key>>;
  { o.act(s, a) } -> std::same_as<OpElement<typename O::Key>>;
  { o.unit() } -> std::same_as<typename O::Key>;
  { o.key_string(a) } -> std::convertible_to<std::string>;
};

template <Operad O>
using ElementOf = OpElement<typename O::Key>;

template <Operad O>
ElementOf<O> basis_element(const O&, int arity, const typename O::Key& k, const Rational& c = Rational(1)) {
  ElementOf<O> e;
  e.arity = arity;
  e.add(k, c);
  return e;
}

template <Operad O>
ElementOf<O> unit_element(const O& o) {
  return basis_element(o, 1, o.unit());
}

/// Degree of a homogeneous element; nullopt for zero, throws when mixed.
template <Operad O>
std::optional<int> degree_of(const O& o, const ElementOf<O>& e) {
  std::optional<int> d;
  for (const auto& [k, c] : e.terms) {
    const int dk = o.degree(k);
    if (d && *d != dk) throw std::invalid_argument("element is not homogeneous");
    d = dk;
  }
  return d;
}

template <Operad O>
ElementOf<O> compose(const O& o, const ElementOf<O>& a, int x, const ElementOf<O>& b) {
  if (x < 0 || x >= a.arity) throw std::invalid_argument("compose: insertion point outside the first operand");
  ElementOf<O> out;
  out.arity = a.arity - 1 + b.arity;
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) out.add(o.compose(a.arity, x, b.arity, ka, kb), ca * cb);
  return out;
}

template <Operad O>
ElementOf<O> relabel(const O& o, const ElementOf<O>& a, const Perm& sigma) {
  if (static_cast<int>(sigma.size()) != a.arity) throw std::invalid_argument("relabel: permutation of the wrong size");
  ElementOf<O> out;
  out.arity = a.arity;
  for (const auto& [k, c] : a.terms) out.add(o.act(sigma, k), c);
  return out;
}

/// i_x: canonical numbering of ∘_x to the order where [m] replaces x in place.
Perm ordered_identification(int n, int x, int m);

/// i_* ∘_x (a, b): the composition read in the induced total order.
template <Operad O>
ElementOf<O> compose_ordered(const O& o, const ElementOf<O>& a, int x, const ElementOf<O>& b) {
  return relabel(o, compose(o, a, x, b), ordered_identification(a.arity, x, b.arity));
}

/// a{b} = Σ_x i_* ∘_x (a, b).
template <Operad O>
ElementOf<O> pre_lie(const O& o, const ElementOf<O>& a, const ElementOf<O>& b) {
  ElementOf<O> out;
  out.arity = a.arity + b.arity - 1;
  for (int x = 0; x < a.arity; ++x) out.add(compose_ordered(o, a, x, b));
  return out;
}

/// {a, b} = a{b} − (−1)^{|a||b|} b{a}.
template <Operad O>
ElementOf<O> gerstenhaber_bracket(const O& o, const ElementOf<O>& a, const ElementOf<O>& b) {
  const int da = degree_of(o, a).value_or(0), db = degree_of(o, b).value_or(0);
  ElementOf<O> out = pre_lie(o, a, b);
  out.add(pre_lie(o, b, a), Rational((da * db) % 2 == 0 ? -1 : 1));
  return out;
}

/// Graded Jacobi sum (−1)^{|a||c|}{a,{b,c}} + cyclic; zero for an operad.
template <Operad O>
ElementOf<O> jacobi_defect(const O& o, const ElementOf<O>& a, const ElementOf<O>& b, const ElementOf<O>& c) {
  const int da = degree_of(o, a).value_or(0), db = degree_of(o, b).value_or(0), dc = degree_of(o, c).value_or(0);
  auto sgn = [](int p) { return Rational(p % 2 == 0 ? 1 : -1); };
  ElementOf<O> out;
  out.arity = a.arity + b.arity + c.arity - 2;
  out.add(gerstenhaber_bracket(o, a, gerstenhaber_bracket(o, b, c)), sgn(da * dc));
  out.add(gerstenhaber_bracket(o, b, gerstenhaber_bracket(o, c, a)), sgn(db * da));
  out.add(gerstenhaber_bracket(o, c, gerstenhaber_bracket(o, a, b)), sgn(dc * db));
  return out;
}

template <Operad O>
std::string element_string(const O& o, const ElementOf<O>& e) {
  if (e.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, c] : e.terms) {
    Rational a = c;
    if (!first) {
      s += a.sign() < 0 ? " - " : " + ";
      a = a.abs();
    } else if (a == Rational(-1)) {
      s += "-";
      a = Rational(1);
    }
    if (!a.is_one()) s += a.to_string() + "·";
    s += o.key_string(k);
    first = false;
  }
  return s;
}

// ------------------------------------------------------------------ axioms

struct AxiomReport {
  bool ok = true;
  std::size_t checks = 0;
  std::string failure;  // first violated instance with its operands
};

/// Origin of a point after a composition: (operand, point of that operand).
using Origins = std::vector<std::pair<int, int>>;

/// Numbering of the points of ∘_x given the origins of both operands.
Origins compose_origins(const Origins& a, int x, const Origins& b);
/// The bijection sending the points of `from` to the points of `to` with equal origins.
Perm match_origins(const Origins& from, const Origins& to);

/// Checks unit, equivariance and both associativity axioms on all basis
/// operands whose composites have at most size_cap points.
template <Operad O>
AxiomReport axiom_check(const O& o, int size_cap) {
  AxiomReport r;
  auto fail = [&](const std::string& what) {
    if (r.ok) r.failure = o.name() + ": " + what;
    r.ok = false;
  };
  auto koszul = [&](const typename O::Key& b, const typename O::Key& c) {
    return Rational((o.degree(b) * o.degree(c)) % 2 == 0 ? 1 : -1);
  };
  auto origins = [](int id, int n) {
    Origins v;
    for (int p = 0; p < n; ++p) v.emplace_back(id, p);
    return v;
  };
  std::map<int, std::vector<typename O::Key>> bases;
  for (int n = 1; n <= size_cap; ++n) bases[n] = o.basis(n);

  const auto e = unit_element(o);
  for (int n = 1; n <= size_cap; ++n)
    for (const auto& k : bases[n]) {
      const auto a = basis_element(o, n, k);
      ++r.checks;
      if (!(compose(o, e, 0, a) == a)) fail("left unit on " + o.key_string(k));
      for (int x = 0; x < n; ++x) {
        ++r.checks;
        Perm to_end(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) to_end[static_cast<std::size_t>(p)] = p < x ? p : (p == x ? n - 1 : p - 1);
        if (!(compose(o, a, x, e) == relabel(o, a, to_end))) fail("right unit at " + std::to_string(x) + " on " + o.key_string(k));
      }
    }

  // Equivariance under adjacent transpositions of either operand generates the full statement.
  for (int n = 1; n <= size_cap; ++n)
    for (int m = 1; n + m - 1 <= size_cap; ++m)
      for (const auto& ka : bases[n])
        for (const auto& kb : bases[m]) {
          const auto a = basis_element(o, n, ka), b = basis_element(o, m, kb);
          for (int x = 0; x < n; ++x) {
            const auto ab = compose(o, a, x, b);
            const Origins z = compose_origins(origins(0, n), x, origins(1, m));
            auto check = [&](int which, const Perm& s) {
              ++r.checks;
              const auto a2 = which == 0 ? relabel(o, a, s) : a;
              const auto b2 = which == 1 ? relabel(o, b, s) : b;
              const int x2 = which == 0 ? s[static_cast<std::size_t>(x)] : x;
              // the relabeled composite: origins move with the permutation
              Origins moved = z;
              for (auto& [id, p] : moved)
                if (id == which) p = s[static_cast<std::size_t>(p)];
              const Origins z2 = compose_origins(origins(0, n), x2, origins(1, m));
              if (!(relabel(o, ab, match_origins(moved, z2)) == compose(o, a2, x2, b2)))
                fail("equivariance for " + o.key_string(ka) + " ∘_" + std::to_string(x) + " " + o.key_string(kb));
            };
            for (int i = 0; i + 1 < n; ++i) {
              Perm s = freelie::identity_perm(n);
              std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i) + 1]);
              check(0, s);
            }
            for (int i = 0; i + 1 < m; ++i) {
              Perm s = freelie::identity_perm(m);
              std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i) + 1]);
              check(1, s);
            }
          }
        }

  for (int n = 1; n <= size_cap; ++n)
    for (int m1 = 1; n + m1 - 1 <= size_cap; ++m1)
      for (int m2 = 1; n + m1 + m2 - 2 <= size_cap; ++m2)
        for (const auto& ka : bases[n])
          for (const auto& kb : bases[m1])
            for (const auto& kc : bases[m2]) {
              const auto a = basis_element(o, n, ka), b = basis_element(o, m1, kb), c = basis_element(o, m2, kc);
              const Origins oa = origins(0, n), ob = origins(1, m1), oc = origins(2, m2);
              // parallel insertions at y ≠ z
              for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                  if (y == z) continue;
                  ++r.checks;
                  const int z1 = z < y ? z : z - 1, y1 = y < z ? y : y - 1;
                  const Origins left = compose_origins(compose_origins(oa, y, ob), z1, oc);
                  const Origins right = compose_origins(compose_origins(oa, z, oc), y1, ob);
                  const auto lhs = compose(o, compose(o, a, y, b), z1, c);
                  auto rhs = relabel(o, compose(o, compose(o, a, z, c), y1, b), match_origins(right, left));
                  ElementOf<O> signed_rhs;
                  signed_rhs.arity = rhs.arity;
                  signed_rhs.add(rhs, koszul(kb, kc));
                  if (!(lhs == signed_rhs))
                    fail("parallel associativity for " + o.key_string(ka) + ", " + o.key_string(kb) + ", " + o.key_string(kc) +
                         " at " + std::to_string(y) + "," + std::to_string(z));
                }
              // nested insertions
              for (int y = 0; y < n; ++y)
                for (int z = 0; z < m1; ++z) {
                  ++r.checks;
                  const Origins left = compose_origins(oa, y, compose_origins(ob, z, oc));
                  const Origins right = compose_origins(compose_origins(oa, y, ob), n - 1 + z, oc);
                  const auto lhs = compose(o, a, y, compose(o, b, z, c));
                  const auto rhs = relabel(o, compose(o, compose(o, a, y, b), n - 1 + z, c), match_origins(right, left));
                  if (!(lhs == rhs))
                    fail("nested associativity for " + o.key_string(ka) + ", " + o.key_string(kb) + ", " + o.key_string(kc) +
                         " at " + std::to_string(y) + "," + std::to_string(z));
                }
            }
  return r;
}

}  // namespace grtk::operadkit
