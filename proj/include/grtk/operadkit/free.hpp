#pragma once

#include <string>
#include <vector>

#include "grtk/operadkit/instances.hpp"
#include "grtk/operadkit/operad.hpp"

namespace grtk::operadkit {

/// Planar tree in pre-order: a vertex of arity k is stored as −k, a leaf as its point (0-based).
using Tree = std::vector<int>;

int tree_arity(const Tree& t);       // number of leaves
int tree_vertices(const Tree& t);    // number of internal vertices
std::string tree_string(const Tree& t);  // "m2(m2(1,2),3)"
Tree parse_tree(const std::string& s);
/// All planar trees with n labelled leaves, vertices of arity ≥ 2 (n = 1 gives the bare leaf).
std::vector<Tree> planar_trees(int n);

/// Free operad on generators m_k′ (k ≥ 2) of degree +1 with S_k acting freely.
///
/// HoAss gives hoass′; HoComm gives hocomm′ = hoass′ / (sh(k)·m_k′), whose elements are kept in
/// normal form: at every vertex the order of the children (ranked by their smallest leaf)
/// is a non-pivot permutation of the highest-pivot echelon basis of sh(k).
///
/// Tree monomials are read as products of vertex decorations in pre-order, so
/// a ∘_x b carries (−1)^{|b|·(vertices of a after leaf x)}.
class FreeOperad {
 public:
  using Key = Tree;
  enum class Kind { HoAss, HoComm };

  FreeOperad(Kind kind, int arity_cap);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int arity_cap() const { return cap_; }
  [[nodiscard]] std::string name() const { return kind_ == Kind::HoAss ? "hoass'" : "hocomm'"; }
  [[nodiscard]] std::vector<Key> basis(int n) const;
  [[nodiscard]] int degree(const Key& t) const { return tree_vertices(t); }
  [[nodiscard]] OpElement<Key> compose(int n, int x, int m, const Key& a, const Key& b) const;
  [[nodiscard]] OpElement<Key> act(const Perm& s, const Key& t) const;
  [[nodiscard]] Key unit() const { return {0}; }
  [[nodiscard]] std::string key_string(const Key& t) const { return tree_string(t); }

  /// m_k′ with its inputs in order (reduced for hocomm′).
  [[nodiscard]] OpElement<Key> generator(int k) const;
  /// The normal form (identity for hoass′).
  [[nodiscard]] OpElement<Key> reduce(const OpElement<Key>& e) const;
  /// Derivation extending d m_n′ = −½ Σ_{i=2}^{n−1} {m_i′, m_{n+1−i}′}; throws above the arity cap.
  [[nodiscard]] OpElement<Key> differential(const OpElement<Key>& e) const;
  /// Dimension of the span of the single-vertex trees of arity k.
  [[nodiscard]] std::size_t generator_space_dim(int k) const;

 private:
  Kind kind_;
  int cap_;
};

/// Planar-tree differential of hoass′ (no reduction), exposed for tests.
OpElement<Tree> hoass_tree_differential(const Tree& t);

/// hoass = hoass′ ⊗ comm{−1}: m_n sits in degree 2 − n.
using HoAss = TensorOperad<FreeOperad, CommShift>;
HoAss make_hoass(int arity_cap);
/// d(T ⊗ μ) = dT ⊗ μ.
OpElement<HoAss::Key> hoass_differential(const HoAss& o, const OpElement<HoAss::Key>& e);

}  // namespace grtk::operadkit
