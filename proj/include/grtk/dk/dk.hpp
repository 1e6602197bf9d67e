#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grtk/dk/setmap.hpp"
#include "grtk/exactla/sparse.hpp"
#include "grtk/freelie/lie.hpp"

namespace grtk::dk {

using exactla::Rational;
using exactla::SparseMatrix;
using exactla::SparseVec;
using freelie::LieElement;
using freelie::Word;

/// Generators t_ij (i < j, points 0-based) of g([n]) are letters ordered lexicographically by (i, j).
int num_generators(int n);
int generator_index(int n, int i, int j);  // symmetric in i, j; i != j
std::pair<int, int> generator_points(int n, int letter);
/// "t12"; points above 9 are comma separated, e.g. "t3,10".
std::string generator_name(int n, int letter);

/// The defining relators of g([n]) as weight-2 elements of the free Lie algebra:
/// [t_ij, t_kl] for disjoint pairs and [t_ij, t_ik + t_jk] for distinct i, j, k.
std::vector<LieElement> relators(int n);

/// Weight-graded piece g([n])_w as a quotient of the free Lie algebra on the t_ij.
class DKBasis {
 public:
  DKBasis(int points, int weight, const DKBasis* previous);

  [[nodiscard]] int points() const { return points_; }
  [[nodiscard]] int weight() const { return weight_; }
  [[nodiscard]] const std::vector<Word>& free_basis() const { return free_basis_; }
  [[nodiscard]] std::size_t ideal_rank() const { return ideal_.rank(); }
  /// Free-basis indices forming the quotient basis (increasing, i.e. lexicographic).
  [[nodiscard]] const std::vector<std::size_t>& representatives() const { return reps_; }
  [[nodiscard]] std::size_t dim() const { return reps_.size(); }
  [[nodiscard]] const Word& representative(std::size_t k) const { return free_basis_[reps_[k]]; }

  /// Index of a Lyndon word in the free basis; throws if absent.
  [[nodiscard]] std::size_t free_index(const Word& w) const;
  /// Quotient coordinates of a free-basis coordinate vector.
  [[nodiscard]] SparseVec project(const SparseVec& free_coords) const;
  [[nodiscard]] std::vector<Rational> project(const LieElement& x) const;
  /// Free coordinates of a free Lie element.
  [[nodiscard]] SparseVec free_coords(const LieElement& x) const;
  /// Lift of quotient coordinates as the combination of representative words.
  [[nodiscard]] LieElement lift(const std::vector<Rational>& coords) const;
  /// dim() × |free_basis| matrix of the projection (built on first use).
  [[nodiscard]] const SparseMatrix& projection() const;
  /// Reduced echelon basis of the ideal component, pivots at the largest words.
  [[nodiscard]] const exactla::SpanEchelon& ideal() const { return ideal_; }

  [[nodiscard]] std::vector<std::string> representative_strings() const;

 private:
  int points_;
  int weight_;
  std::vector<Word> free_basis_;
  exactla::SpanEchelon ideal_;
  std::vector<std::size_t> reps_;
  std::vector<long> rep_pos_;
  mutable std::once_flag projection_once_;
  mutable SparseMatrix projection_;
};

/// Cached, thread-safe construction of g([n])_w.
std::shared_ptr<const DKBasis> dk_basis(int n, int w);

/// Element of g([n])_w in quotient coordinates.
class DKElement {
 public:
  DKElement() = default;
  explicit DKElement(std::shared_ptr<const DKBasis> basis);
  DKElement(std::shared_ptr<const DKBasis> basis, std::vector<Rational> coords);

  static DKElement zero(int n, int w) { return DKElement(dk_basis(n, w)); }
  /// t_ij with 1-based points.
  static DKElement t(int n, int i, int j);
  static DKElement from_free(int n, const LieElement& x);

  [[nodiscard]] int points() const { return basis_->points(); }
  [[nodiscard]] int weight() const { return basis_->weight(); }
  [[nodiscard]] const DKBasis& basis() const { return *basis_; }
  [[nodiscard]] const std::shared_ptr<const DKBasis>& basis_ptr() const { return basis_; }
  [[nodiscard]] const std::vector<Rational>& coords() const { return coords_; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] SparseVec sparse() const { return SparseVec::from_dense(coords_); }

  DKElement& operator+=(const DKElement& o);
  DKElement& operator-=(const DKElement& o);
  DKElement& operator*=(const Rational& c);
  friend DKElement operator+(DKElement a, const DKElement& b) { return a += b; }
  friend DKElement operator-(DKElement a, const DKElement& b) { return a -= b; }
  friend DKElement operator*(const Rational& c, DKElement a) { return a *= c; }
  DKElement operator-() const { return Rational(-1) * *this; }
  friend bool operator==(const DKElement& a, const DKElement& b);

  /// Combination of representative bracket words, e.g. "t12 - t23".
  [[nodiscard]] std::string to_string() const;

 private:
  std::shared_ptr<const DKBasis> basis_;
  std::vector<Rational> coords_;
};

/// Bracket of the k-th and l-th representatives of weights a and b, in g([n])_{a+b} coordinates (cached).
const SparseVec& representative_bracket(int n, int a, std::size_t k, int b, std::size_t l);

DKElement bracket(const DKElement& x, const DKElement& y);

/// D_x: scales a weight-w element by x^w.
DKElement dilation(const Rational& x, const DKElement& a);

/// Lie algebra map g([source]) -> g([target]) determined by the images of the generators.
class LieHom {
 public:
  /// One weight-1 element of g([target]) per generator of g([source]).
  LieHom(int source, int target, std::vector<DKElement> generator_images);

  [[nodiscard]] int source() const { return source_; }
  [[nodiscard]] int target() const { return target_; }
  [[nodiscard]] DKElement apply(const DKElement& a) const;
  /// Matrix of the map g([source])_w -> g([target])_w (cached per weight).
  [[nodiscard]] const SparseMatrix& matrix(int w) const;
  /// Image of a Lyndon word of the free algebra (memoized through its standard factorization).
  [[nodiscard]] DKElement image_of_word(const Word& lyndon) const;

 private:
  int source_;
  int target_;
  std::vector<DKElement> images_;
  mutable std::mutex mu_;
  mutable std::map<Word, DKElement> word_cache_;
  mutable std::map<int, std::shared_ptr<const SparseMatrix>> matrix_cache_;
};

/// f_*: t_ij -> t_f(i)f(j), for f injective and total.
std::shared_ptr<const LieHom> direct_image_hom(const SetMap& f);
/// f^*: t_ij -> sum over f(p)=i, f(q)=j of t_pq, for f total.
std::shared_ptr<const LieHom> inverse_image_hom(const SetMap& f);
/// For f partial with domain U: i_* ∘ (f|_U)^*.
std::shared_ptr<const LieHom> partial_pullback_hom(const SetMap& f);

DKElement direct_image(const SetMap& f, const DKElement& a);
DKElement inverse_image(const SetMap& f, const DKElement& a);
DKElement partial_pullback(const SetMap& f, const DKElement& a);

/// The maps of the composition at x ∈ [n] (0-based) with [m]: Z = ([n] − {x}) ⊔ [m], relabeled 1..n−1+m
/// with the remaining points of [n] first in order, then [m].
SetMap compose_collapse(int n, int x, int m);  // p: Z -> [n]
SetMap compose_inclusion(int n, int x, int m);  // i: [m] -> Z

/// p^*(a) + i_*(b); either summand may be absent, and present summands must share a weight.
DKElement dk_compose(int n, int x, int m, const std::optional<DKElement>& a, const std::optional<DKElement>& b);

/// Violated hypothesis of the commutation claim (image of g∘f has more than one point).
class ClaimHypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommutationResult {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::string witness;  // description of a nonzero bracket when !ok
};

/// Checks [f_*(u), g^*(v)] = 0 for all basis elements u of g(S)_a, v of g(R)_b with a + b <= weight_cap.
CommutationResult check_commutation(const SetMap& f, const SetMap& g, int weight_cap);

}  // namespace grtk::dk
