#pragma once

#include <memory>
#include <string>
#include <vector>

#include "grtk/dk/dk.hpp"
#include "grtk/exactla/sparse.hpp"

namespace grtk::grt {

using dk::DKElement;
using exactla::Rational;
using exactla::SparseMatrix;

/// How a permutation word s1s2s3 acts on g(3).
enum class WordConvention {
  Image,    // k ↦ s_k, so t_ij ↦ t_{s_i s_j}
  Inverse,  // s_k ↦ k, the inverse bijection
};

/// Relabeling map on g([n]) for a 1-based permutation word such as "213".
std::shared_ptr<const dk::LieHom> word_relabel_hom(const std::string& word, WordConvention conv = WordConvention::Image);

/// ((213) − (231) − (123)) stacked over ((132) − (312) − (123)), each a dim×dim block on g(3)_w.
SparseMatrix shuffle_condition(int w, WordConvention conv = WordConvention::Image);

/// One summand of the five-term operator g(3) → g(4).
struct PentagonTerm {
  std::string label;  // "(123)_*", "(1(23)4)^*", ...
  int sign;
  std::shared_ptr<const dk::LieHom> map;
};

/// (123)_* + (1(23)4)^* + (234)_* − (12(34))^* − ((12)34)^*, in that order.
const std::vector<PentagonTerm>& pentagon_terms();

/// Matrix g(3)_w → g(4)_w of the five-term operator.
SparseMatrix pentagon_condition(int w);

struct ConditionSystem {
  int weight = 0;
  SparseMatrix shuffle_block;
  SparseMatrix pentagon_block;
};

ConditionSystem condition_system(int w, WordConvention conv = WordConvention::Image);

/// Reduced-echelon basis of the kernel of the shuffle block alone.
std::vector<DKElement> shuffle_kernel(int w, WordConvention conv = WordConvention::Image);

/// Reduced-echelon basis of the joint kernel: the weight-w part of grt₁ as elements φ of g(3)_w.
std::vector<DKElement> grt_basis(int w, WordConvention conv = WordConvention::Image);

/// φ satisfies both condition systems.
bool satisfies_conditions(const DKElement& phi, WordConvention conv = WordConvention::Image);

}  // namespace grtk::grt
