#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "grtk/exactla/rational.hpp"

namespace grtk::exactla {

/// Sparse vector: entries sorted by index, no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVec() = default;
  explicit SparseVec(std::vector<Entry> entries);  // sorts, merges duplicates, drops zeros
  static SparseVec from_dense(const std::vector<Rational>& dense);
  static SparseVec unit(std::size_t i) { return SparseVec({{i, Rational(1)}}); }

  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
  [[nodiscard]] Rational get(std::size_t i) const;

  /// this += c * other
  void axpy(const Rational& c, const SparseVec& other);
  void scale(const Rational& c);
  [[nodiscard]] std::vector<Rational> to_dense(std::size_t n) const;

  friend bool operator==(const SparseVec&, const SparseVec&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Row-major sparse matrix over Q.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}
  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& dense);
  static SparseMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (each of length `rows`).
  static SparseMatrix from_columns(std::size_t rows, const std::vector<SparseVec>& cols);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const SparseVec& row(std::size_t r) const { return data_.at(r); }
  [[nodiscard]] Rational get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);
  void set_row(std::size_t r, SparseVec v);
  [[nodiscard]] std::size_t nnz() const;

  [[nodiscard]] SparseMatrix transpose() const;
  [[nodiscard]] SparseVec apply(const SparseVec& v) const;
  [[nodiscard]] std::vector<Rational> apply(const std::vector<Rational>& v) const;
  [[nodiscard]] bool is_zero() const { return nnz() == 0; }

  /// Stacks `below` under this matrix; column counts must agree.
  [[nodiscard]] SparseMatrix vstack(const SparseMatrix& below) const;
  /// Places `right` to the right of this matrix; row counts must agree.
  [[nodiscard]] SparseMatrix hstack(const SparseMatrix& right) const;

  /// (row, col, "p/q") triplets in row-major order.
  [[nodiscard]] std::vector<std::tuple<std::size_t, std::size_t, std::string>> triplets() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> data_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator*(const Rational& c, const SparseMatrix& m);

/// Rank over Q by fraction-free integer elimination.
std::size_t rank(const SparseMatrix& m);

/// Basis of {v : Mv = 0}: one vector per free column (increasing), reduced echelon form.
std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m);

/// Reference rank by textbook dense Gaussian elimination over Q.
std::size_t rank_rational_dense(const SparseMatrix& m);

/// Solves M x = b; returns false when inconsistent.
bool solve(const SparseMatrix& m, const std::vector<Rational>& b, std::vector<Rational>* x = nullptr);

/// Incremental echelon basis of a subspace of Q^n, kept over Q with unit pivots.
///
/// The pivot of a row is its highest column (PivotOrder::Highest) or its lowest
/// (PivotOrder::Lowest). Columns that never become pivots span a complement
/// made of standard basis vectors; `reduce` computes coordinates modulo the span.
/// Const members are safe to call concurrently.
class SpanEchelon {
 public:
  enum class PivotOrder { Lowest, Highest };

  SpanEchelon(std::size_t dim, PivotOrder order);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] bool is_pivot(std::size_t c) const { return row_of_[c] >= 0; }

  /// Adds v to the span; returns true if it was independent.
  bool insert(const SparseVec& v);
  /// Remainder of v after eliminating every pivot column.
  [[nodiscard]] SparseVec reduce(const SparseVec& v) const;
  /// Back-substitutes so each stored row is supported on its pivot and non-pivot columns only.
  void make_reduced();

  [[nodiscard]] std::vector<std::size_t> pivots() const;      // increasing
  [[nodiscard]] std::vector<std::size_t> non_pivots() const;  // increasing
  /// Stored row with the given pivot column.
  [[nodiscard]] const SparseVec& row_for(std::size_t pivot) const;
  [[nodiscard]] bool reduced() const { return reduced_; }

 private:
  SparseVec eliminate(const SparseVec& v, bool skip_leading) const;

  std::size_t dim_;
  PivotOrder order_;
  std::size_t rank_ = 0;
  bool reduced_ = true;
  std::vector<long> row_of_;
  std::vector<SparseVec> rows_;
  std::vector<std::size_t> pivot_of_row_;
};

}  // namespace grtk::exactla
