#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grtk/complexes/algebra.hpp"
#include "grtk/dk/dk.hpp"
#include "grtk/exactla/sparse.hpp"

namespace grtk::grt {

using complexes::CEElement;
using dk::DKElement;
using exactla::Rational;
using exactla::SparseMatrix;

/// A derivation of the minimal model of comm, recorded by its values on the generators.
///
/// The value at arity n is an element ψ_n of C_m(g(n))_w vanishing on signed shuffles,
/// the image of (lie′(n) ⊗ C(g(n)))^{S_n} under evaluation at the identity word.
/// All components share the weight w and the derivation degree k = n − 2 − m.
struct DerivationValue {
  int weight = 0;
  int degree = 0;
  std::map<int, CEElement> components;

  /// Adds c at the arity c.n; c must have the chain length this degree dictates.
  void add(const CEElement& c, const Rational& coef = Rational(1));
  [[nodiscard]] bool is_zero() const;
  /// Largest arity with a nonzero component, 0 when zero.
  [[nodiscard]] int max_arity() const;
  /// Smallest arity with a nonzero component, 0 when zero.
  [[nodiscard]] int min_arity() const;
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const DerivationValue& a, const DerivationValue& b);
};

/// CE chain length carried at arity n by a derivation of degree k.
int chain_length(int arity, int degree);

/// Basis of the invariant component at (arity, weight, CE degree −m), obtained as the image of
/// the exact S_n-average over lie′(n) ⊗ C_m(g(n))_w followed by evaluation; reduced echelon form.
std::vector<CEElement> deformation_space(int arity, int weight, int ce_degree);

/// Rank of the averaging projector on lie′(n) ⊗ C_m(g(n))_w.
std::size_t invariant_rank(int arity, int weight, int ce_degree);

/// The same component computed as the common kernel of the signed shuffle operators of sh(n).
std::vector<CEElement> shuffle_kernel_space(int arity, int weight, int ce_degree);

/// c vanishes on all signed shuffles of sh(n).
bool in_deformation_space(const CEElement& c);

/// δ_i: C(g(n−1)) → C(g(n)) for 0 ≤ i ≤ n, with n = c.n + 1. δ_0 is k ↦ k+1, δ_n is k ↦ k,
/// and δ_i in between pulls back along the surjection merging i and i+1 (1-based).
CEElement coface(const CEElement& c, int i);

/// Hochschild-type coface sum Σ_{i=0}^{n} (−1)^i δ_i from C(g(n−1)) to C(g(n)):
/// δ_0 and δ_n insert a free point on the left and on the right, δ_i pulls back along the merge of i, i+1.
CEElement hochschild(const CEElement& c);

/// Hoch for chains whose factors all have weight 1, computed on generator pairs alone; valid at any arity,
/// including those beyond the reach of the quotient bases. Throws std::invalid_argument on heavier factors.
CEElement hochschild_weight_one(const CEElement& c);

/// D(ψ)_n = ∂ψ_n + (−1)^k Hoch(ψ_{n−1}) for every n ≤ arity_cap.
/// Throws std::invalid_argument if v has support at an arity ≥ arity_cap.
DerivationValue deformation_differential(const DerivationValue& v, int arity_cap);

/// The degree-0 value supported on the ternary generator with value φ.
DerivationValue embed_grt(const DKElement& phi);

/// R(m₂) = 1 ∈ C₀(g(2)).
DerivationValue unit_value();

struct CoboundaryReport {
  bool coboundary = false;
  std::size_t preimage_dim = 0;  // unknowns: invariant chains of degree one less, over all arities
  std::size_t rank = 0;          // rank of D on those unknowns
  int preimage_arity = 0;        // largest arity carrying an unknown
};

/// Exact test of target ∈ D(degree − 1). A value of degree k − 1 and weight w vanishes above arity w + 1 + k,
/// so the search over all arities is finite. Throws std::invalid_argument for a target it cannot reach.
CoboundaryReport coboundary_test(const DerivationValue& target);

struct ClassVerdict {
  bool in_space = false;    // φ vanishes on signed shuffles
  bool cocycle = false;     // in_space and D(F(φ)) = 0 in the cocycle window
  bool coboundary = false;  // F(φ) = D(ψ) for some ψ of degree −1
  std::optional<DerivationValue> witness;  // D(F(φ)) when nonzero
  std::size_t preimage_dim = 0;            // unknowns in the coboundary system
  std::size_t coboundary_rank = 0;         // rank of the coboundary system
  int preimage_arity = 0;                  // largest arity carrying an unknown
  [[nodiscard]] bool nonzero_class() const { return cocycle && !coboundary; }
};

/// Cocycle test of F(φ) through arity_window, and an exact coboundary test: a degree −1 value of weight w
/// vanishes above arity w + 1, so all candidate preimages are searched, never more than max(3, w + 1) arities.
/// Throws std::invalid_argument when arity_window < 4.
ClassVerdict cohomology_class_test(const DKElement& phi, int arity_window = 6);

}  // namespace grtk::grt
