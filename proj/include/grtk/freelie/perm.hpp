#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "grtk/exactla/rational.hpp"
#include "grtk/exactla/sparse.hpp"

namespace grtk::freelie {

/// Permutation of {0..n-1} in one-line form: p[k] is the image of k.
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm compose(const Perm& a, const Perm& b);  // (a∘b)(k) = a(b(k))
Perm inverse(const Perm& p);
int perm_sign(const Perm& p);
/// All of S_n in lexicographic order of the one-line form.
const std::vector<Perm>& all_perms(int n);
/// Position of p in all_perms(p.size()).
std::size_t perm_index(const Perm& p);
/// "213" (1-based one-line form).
std::string perm_string(const Perm& p);
Perm parse_perm(const std::string& s);

/// Element of k[S_n].
struct PermutationVector {
  int n = 0;
  std::map<Perm, exactla::Rational> coeffs;

  void add(const Perm& p, const exactla::Rational& c);
  [[nodiscard]] exactla::SparseVec to_sparse() const;  // coordinates over all_perms(n)
  static PermutationVector from_sparse(int n, const exactla::SparseVec& v);
  [[nodiscard]] std::string to_string() const;
};

/// All interleavings of the sequences Y and Z (as one-line words),
/// optionally weighted by the sign of the permutation word.
PermutationVector shuffle_sum(const std::vector<int>& Y, const std::vector<int>& Z, bool signed_sum = false);

/// Echelonized basis (reduced rows, lowest pivots) of sh(n): the span of the shuffle sums
/// of all pairs of complementary nonempty parts, each part in every total order.
std::vector<PermutationVector> shuffle_subspace(int n);

}  // namespace grtk::freelie
