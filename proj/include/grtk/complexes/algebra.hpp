#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grtk/dk/dk.hpp"
#include "grtk/exactla/rational.hpp"

namespace grtk::complexes {

using exactla::Rational;

/// A basis element of g([n]) across all weights: weight in the high byte, quotient index below.
/// Gens compare by (weight, index), which is the global PBW order.
using Gen = std::uint32_t;
inline Gen make_gen(int weight, std::size_t index) { return (static_cast<Gen>(weight) << 24) | static_cast<Gen>(index); }
inline int gen_weight(Gen g) { return static_cast<int>(g >> 24); }
inline std::size_t gen_index(Gen g) { return g & 0xFFFFFFu; }
/// Bracket representative name, e.g. "[t12,t13]".
std::string gen_name(int n, Gen g);
/// All Gens of one weight.
std::vector<Gen> gens_of_weight(int n, int w);
/// A g([n]) element as a combination of Gens.
std::map<Gen, Rational> gen_combination(const dk::DKElement& x);

// ------------------------------------------------------------ envelope U(g)

/// Weakly increasing sequence of Gens.
using PBWMonomial = std::vector<Gen>;
/// Element of U(g([n])) in the PBW basis.
using UElement = std::map<PBWMonomial, Rational>;

int monomial_weight(const PBWMonomial& m);
std::string monomial_string(int n, const PBWMonomial& m);  // "t12*t13", "1" when empty

/// All PBW monomials of total weight w (w = 0 gives the empty monomial).
std::vector<PBWMonomial> pbw_basis(int n, int w);

/// Normal-ordered form of an arbitrary product of Gens (memoized per n).
const UElement& normal_order(int n, const std::vector<Gen>& word);
UElement u_multiply(int n, const PBWMonomial& a, const PBWMonomial& b);
/// Image of a PBW monomial under the algebra map U(h) induced by a Lie map h.
UElement u_map(const dk::LieHom& h, const PBWMonomial& m);

// ------------------------------------------------------- Chevalley–Eilenberg

/// Strictly increasing sequence of Gens, read as a wedge product.
using Wedge = std::vector<Gen>;
struct CEElement {
  int n = 0;
  std::map<Wedge, Rational> terms;

  void add(const Wedge& w, const Rational& c);
  void add(const CEElement& o, const Rational& c = Rational(1));
  [[nodiscard]] bool is_zero() const { return terms.empty(); }
  friend bool operator==(const CEElement&, const CEElement&) = default;
  [[nodiscard]] std::string to_string() const;
};

/// Sorts an arbitrary sequence into a wedge; returns the sign, 0 when a factor repeats.
int wedge_normalize(std::vector<Gen>& factors);
std::string wedge_string(int n, const Wedge& w);
/// Wedges of m factors with total weight w, in lexicographic order.
std::vector<Wedge> ce_basis(int n, int w, int m);
/// ∂(x1∧…∧xm) = Σ_{i<j} (−1)^{i+j} [xi,xj]∧x1…x̂i…x̂j…∧xm.
CEElement ce_boundary(const CEElement& c);
/// Λ(h): apply a Lie map factor-wise.
CEElement ce_map(const dk::LieHom& h, const CEElement& c);

// --------------------------------------------------------------- bar words

/// a1|…|al with each ai a PBW monomial of positive weight; degree −l.
using BarWord = std::vector<PBWMonomial>;
struct BarElement {
  int n = 0;
  std::map<BarWord, Rational> terms;

  void add(const BarWord& w, const Rational& c);
  void add(const BarElement& o, const Rational& c = Rational(1));
  [[nodiscard]] bool is_zero() const { return terms.empty(); }
  friend bool operator==(const BarElement&, const BarElement&) = default;
  [[nodiscard]] std::string to_string() const;
};

std::string bar_word_string(int n, const BarWord& w);
/// Bar words of l factors with total weight w, in lexicographic order.
std::vector<BarWord> bar_basis(int n, int w, int l);
/// d(a1|…|al) = Σ_{i=1}^{l−1} (−1)^{i−1} (a1|…|ai·a(i+1)|…|al).
BarElement bar_differential(const BarElement& b);
/// Factor-wise image under the algebra map induced by a Lie map.
BarElement bar_map(const dk::LieHom& h, const BarElement& b);

/// Chain map C(g) -> B(U(g)): x1∧…∧xm ↦ (−1)^{m−1} Σ_σ sgn(σ) x_σ1|…|x_σm.
BarElement antisymmetrize(const CEElement& c);

/// Eilenberg–Zilber shuffle product of bar words over the same [n], factors of degree −1.
BarElement shuffle_product(const BarElement& a, const BarElement& b);

/// Operadic composition at x ∈ [n] (0-based): p^* applied to a, i_* to b, then the shuffle product.
BarElement bar_compose(int n, int x, int m, const BarElement& a, const BarElement& b);

/// The bar element with a single term: the empty word (degree 0, the operad unit over [n]).
BarElement bar_unit(int n);
/// One-factor word holding a g([n]) element.
BarElement bar_from_lie(const dk::DKElement& x);

}  // namespace grtk::complexes
