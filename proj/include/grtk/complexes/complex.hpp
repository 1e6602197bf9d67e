#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grtk/complexes/algebra.hpp"
#include "grtk/exactla/sparse.hpp"
#include "json.hpp"

namespace grtk::complexes {

using exactla::SparseMatrix;

/// (homological degree, weight)
using Cell = std::pair<int, int>;

/// A finite graded complex with differentials raising the degree by one and preserving weight.
struct ChainComplex {
  std::string name;
  std::map<Cell, std::vector<std::string>> components;  // ordered basis labels
  std::map<Cell, SparseMatrix> differentials;           // cell -> (degree + 1, weight)
  /// Lowest degree materialized; cells at this degree miss their incoming map unless `complete`.
  int min_degree = 0;
  bool complete = true;

  [[nodiscard]] std::size_t dim(int degree, int weight) const;
  /// The map out of (degree, weight); an all-zero matrix of the right shape when absent.
  [[nodiscard]] SparseMatrix d(int degree, int weight) const;
  /// First cell where d∘d is nonzero, if any.
  [[nodiscard]] std::optional<Cell> dsquared_violation() const;
};

struct DSquaredError : std::runtime_error {
  Cell cell;
  explicit DSquaredError(Cell c);
};

ChainComplex bar_complex(int n, int weight, int min_degree);
ChainComplex ce_complex(int n, int weight);

/// Rank of H at every cell; throws DSquaredError naming the offending cell.
std::map<Cell, std::size_t> homology_ranks(const ChainComplex& c);

/// Euler characteristic Σ (−1)^deg dim over one weight.
long euler_characteristic(const ChainComplex& c, int weight);

/// Matrix of antisymmetrize from Λ^m g([n])_w to the bar words of length m and weight w.
SparseMatrix antisymmetrize_matrix(int n, int weight, int m);

struct AntisymmetrizationCell {
  int degree = 0;
  std::size_t h_ce = 0;         // rank of CE homology
  std::size_t h_bar = 0;        // rank of bar homology
  std::size_t image_rank = 0;   // rank of the induced map on homology
  bool chain_map = false;       // d∘f = f∘∂ out of this degree
  [[nodiscard]] bool injective() const { return image_rank == h_ce; }
};
/// The induced map on homology, cell by cell, at one weight (w ≥ 1).
std::vector<AntisymmetrizationCell> antisymmetrization_report(int n, int weight);

/// Whether an element of bar degree −l, weight w is a boundary.
bool is_bar_boundary(const BarElement& b);
/// Coordinates of a homogeneous bar element; returns (length, weight).
std::pair<int, int> bar_grading(const BarElement& b);

/// Per-cell dimensions and differential triplets (row, col, "p/q").
nlohmann::json to_json(const ChainComplex& c);

}  // namespace grtk::complexes
