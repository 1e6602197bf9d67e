#pragma once

#include <compare>
#include <string>
#include <vector>

#include "grtk/complexes/algebra.hpp"
#include "grtk/operadkit/operad.hpp"

namespace grtk::operadkit {

/// The square-zero extension comm ⊕ C_•(g(·)) of comm by its module of Chevalley–Eilenberg chains.
///
/// 1 ∘_x c = i_*(c) along [m] → Z, c ∘_x 1 = p^*(c) along Z → [n], and module elements
/// compose to zero with each other. The module is an honest comm-module exactly
/// when this is an operad, which axiom_check verifies.
class CommCEModule {
 public:
  struct Key {
    int kind = 0;    // 0: the comm generator, 1: a chain
    int points = 1;  // the chain lives over [points]
    complexes::Wedge wedge;
    auto operator<=>(const Key&) const = default;
  };

  explicit CommCEModule(int weight_cap) : cap_(weight_cap) {}

  [[nodiscard]] std::string name() const { return "comm⊕C(g)"; }
  [[nodiscard]] std::vector<Key> basis(int n) const;
  [[nodiscard]] int degree(const Key& k) const { return -static_cast<int>(k.wedge.size()); }
  [[nodiscard]] OpElement<Key> compose(int n, int x, int m, const Key& a, const Key& b) const;
  [[nodiscard]] OpElement<Key> act(const Perm& s, const Key& k) const;
  [[nodiscard]] Key unit() const { return {}; }
  [[nodiscard]] std::string key_string(const Key& k) const;

 private:
  int cap_;
};

/// Operad axioms for the Drinfeld–Kohno operad of Lie algebras under direct sum,
/// ∘_x(a, b) = p^*a + i_*b, on quotient basis elements of weight ≤ weight_cap.
AxiomReport dk_axiom_check(int size_cap, int weight_cap);

}  // namespace grtk::operadkit
