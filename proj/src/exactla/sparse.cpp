#include "grtk/exactla/sparse.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace grtk::exactla {

// ---------------------------------------------------------------- SparseVec

SparseVec::SparseVec(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second.is_zero(); });
}

SparseVec SparseVec::from_dense(const std::vector<Rational>& dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) v.entries_.emplace_back(i, dense[i]);
  return v;
}

Rational SparseVec::get(std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return Rational(0);
}

void SparseVec::axpy(const Rational& c, const SparseVec& other) {
  if (c.is_zero() || other.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational s = a->second + c * b->second;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

void SparseVec::scale(const Rational& c) {
  if (c.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= c;
}

std::vector<Rational> SparseVec::to_dense(std::size_t n) const {
  std::vector<Rational> d(n);
  for (const auto& [i, v] : entries_) {
    if (i >= n) throw std::out_of_range("SparseVec::to_dense: index out of range");
    d[i] = v;
  }
  return d;
}

// ------------------------------------------------------------- SparseMatrix

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& dense) {
  std::size_t cols = dense.empty() ? 0 : dense.front().size();
  SparseMatrix m(dense.size(), cols);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != cols) throw std::invalid_argument("SparseMatrix::from_dense: ragged rows");
    m.data_[r] = SparseVec::from_dense(dense[r]);
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i] = SparseVec::unit(i);
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, const std::vector<SparseVec>& cols) {
  std::vector<std::vector<SparseVec::Entry>> acc(rows);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c].entries()) {
      if (r >= rows) throw std::out_of_range("SparseMatrix::from_columns: row index out of range");
      acc[r].emplace_back(c, v);
    }
  SparseMatrix m(rows, cols.size());
  for (std::size_t r = 0; r < rows; ++r) m.data_[r] = SparseVec(std::move(acc[r]));
  return m;
}

Rational SparseMatrix::get(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::get");
  return data_[r].get(c);
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set");
  Rational cur = data_[r].get(c);
  data_[r].axpy(Rational(1), SparseVec({{c, v - cur}}));
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add");
  data_[r].axpy(Rational(1), SparseVec({{c, v}}));
}

void SparseMatrix::set_row(std::size_t r, SparseVec v) {
  if (r >= rows_) throw std::out_of_range("SparseMatrix::set_row");
  if (!v.empty() && v.entries().back().first >= cols_) throw std::out_of_range("SparseMatrix::set_row: column");
  data_[r] = std::move(v);
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.nnz();
  return n;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::vector<SparseVec::Entry>> acc(cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r].entries()) acc[c].emplace_back(r, v);
  SparseMatrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) t.data_[c] = SparseVec(std::move(acc[c]));
  return t;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  std::vector<SparseVec::Entry> out;
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s(0);
    const auto& a = data_[r].entries();
    const auto& b = v.entries();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first < b[j].first) {
        ++i;
      } else if (b[j].first < a[i].first) {
        ++j;
      } else {
        s += a[i].second * b[j].second;
        ++i;
        ++j;
      }
    }
    if (!s.is_zero()) out.emplace_back(r, std::move(s));
  }
  return SparseVec(std::move(out));
}

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, x] : data_[r].entries()) out[r] += x * v[c];
  return out;
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& below) const {
  if (below.cols_ != cols_) throw std::invalid_argument("SparseMatrix::vstack: column mismatch");
  SparseMatrix m(rows_ + below.rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) m.data_[r] = data_[r];
  for (std::size_t r = 0; r < below.rows_; ++r) m.data_[rows_ + r] = below.data_[r];
  return m;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("SparseMatrix::hstack: row mismatch");
  SparseMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto e = data_[r].entries();
    for (const auto& [c, v] : right.data_[r].entries()) e.emplace_back(cols_ + c, v);
    m.data_[r] = SparseVec(std::move(e));
  }
  return m;
}

std::vector<std::tuple<std::size_t, std::size_t, std::string>> SparseMatrix::triplets() const {
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r].entries()) out.emplace_back(r, c, v.to_string());
  return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("SparseMatrix product: dimension mismatch");
  SparseMatrix m(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseVec acc;
    for (const auto& [k, v] : a.row(r).entries()) acc.axpy(v, b.row(k));
    m.set_row(r, std::move(acc));
  }
  return m;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("SparseMatrix sum: shape mismatch");
  SparseMatrix m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseVec v = a.row(r);
    v.axpy(Rational(1), b.row(r));
    m.set_row(r, std::move(v));
  }
  return m;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + Rational(-1) * b; }

SparseMatrix operator*(const Rational& c, const SparseMatrix& m) {
  SparseMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVec v = m.row(r);
    v.scale(c);
    out.set_row(r, std::move(v));
  }
  return out;
}

// ------------------------------------------------- fraction-free elimination

namespace {

/// Integer row: entries are integral Rationals, content 1, leading entry positive.
using IntRow = std::vector<std::pair<std::size_t, Rational>>;

mpz_class content_of(const IntRow& row) {
  mpz_class g = 0;
  for (const auto& e : row) {
    g = gcd(g, e.second.numerator());
    if (g == 1) break;
  }
  return g;
}

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  std::int64_t g64 = 0;
  bool small = true;
  for (const auto& e : row) {
    std::int64_t v;
    if (!e.second.small_integer(v)) {
      small = false;
      break;
    }
    g64 = std::gcd(g64, v < 0 ? -v : v);
    if (g64 == 1) break;
  }
  Rational g;
  if (small) {
    g = Rational(g64);
  } else {
    g = Rational(content_of(row));
  }
  if (row.front().second.sign() < 0) g = -g;
  if (!g.is_one())
    for (auto& e : row) e.second /= g;
}

IntRow to_int_row(const SparseVec& v) {
  mpz_class l = 1;
  bool all_int = true;
  for (const auto& e : v.entries())
    if (!e.second.is_integer()) {
      all_int = false;
      l = lcm(l, e.second.denominator());
    }
  IntRow row(v.entries().begin(), v.entries().end());
  if (!all_int) {
    Rational s(l);
    for (auto& e : row) e.second *= s;
  }
  make_primitive(row);
  return row;
}

/// row <- a*row - b*pivot, where a = pivot[c], b = row[c]; cancels column c.
IntRow combine(const IntRow& row, const IntRow& pivot, const Rational& a, const Rational& b) {
  IntRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.emplace_back(row[i].first, a * row[i].second);
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -(b * pivot[j].second));
      ++j;
    } else {
      Rational s = a * row[i].second - b * pivot[j].second;
      if (!s.is_zero()) out.emplace_back(row[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

Rational entry(const IntRow& row, std::size_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
  return (it != row.end() && it->first == c) ? it->second : Rational(0);
}

/// Row echelon form with lowest-column pivots: pivot column -> primitive integer row.
std::map<std::size_t, IntRow> fraction_free_echelon(const SparseMatrix& m) {
  std::map<std::size_t, IntRow> piv;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    IntRow row = to_int_row(m.row(r));
    while (!row.empty()) {
      std::size_t c = row.front().first;
      auto it = piv.find(c);
      if (it == piv.end()) {
        piv.emplace(c, std::move(row));
        break;
      }
      row = combine(row, it->second, it->second.front().second, row.front().second);
    }
  }
  return piv;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) { return fraction_free_echelon(m).size(); }

std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m) {
  auto piv = fraction_free_echelon(m);
  // Back substitution, highest pivot first, so every row ends up free of other pivot columns.
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    IntRow& row = it->second;
    for (;;) {
      bool changed = false;
      for (std::size_t k = 1; k < row.size(); ++k) {
        auto other = piv.find(row[k].first);
        if (other == piv.end()) continue;
        row = combine(row, other->second, other->second.front().second, row[k].second);
        changed = true;
        break;
      }
      if (!changed) break;
    }
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (piv.count(f)) continue;
    std::vector<Rational> v(m.cols());
    v[f] = Rational(1);
    for (const auto& [c, row] : piv) {
      Rational x = entry(row, f);
      if (!x.is_zero()) v[c] = -(x / row.front().second);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank_rational_dense(const SparseMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r).entries()) a[r][c] = v;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < m.cols() && rk < m.rows(); ++c) {
    std::size_t p = rk;
    while (p < m.rows() && a[p][c].is_zero()) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[rk]);
    Rational inv = a[rk][c].inverse();
    for (std::size_t r = rk + 1; r < m.rows(); ++r) {
      if (a[r][c].is_zero()) continue;
      Rational f = a[r][c] * inv;
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k] -= f * a[rk][k];
    }
    ++rk;
  }
  return rk;
}

bool solve(const SparseMatrix& m, const std::vector<Rational>& b, std::vector<Rational>* x) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  SparseMatrix aug = m.hstack(SparseMatrix::from_columns(m.rows(), {SparseVec::from_dense(b)}));
  auto ker = kernel_basis(aug);
  // A solution exists iff some kernel vector of [M | b] has a nonzero last coordinate.
  const std::size_t last = m.cols();
  for (const auto& v : ker) {
    if (v[last].is_zero()) continue;
    if (x) {
      Rational s = -(v[last].inverse());
      x->assign(m.cols(), Rational(0));
      for (std::size_t i = 0; i < m.cols(); ++i) (*x)[i] = v[i] * s;
    }
    return true;
  }
  return false;
}

// -------------------------------------------------------------- SpanEchelon

SpanEchelon::SpanEchelon(std::size_t dim, PivotOrder order)
    : dim_(dim), order_(order), row_of_(dim, -1) {}

SparseVec SpanEchelon::eliminate(const SparseVec& v, bool skip_leading) const {
  // Dense accumulator plus a heap of touched columns, visited in pivot order. The scratch
  // vectors are per thread so shared echelons can be reduced against concurrently.
  thread_local std::vector<Rational> scratch;
  thread_local std::vector<char> marked;
  if (scratch.size() < dim_) {
    scratch.resize(dim_);
    marked.resize(dim_, 0);
  }
  using Heap = std::priority_queue<std::size_t, std::vector<std::size_t>, std::function<bool(std::size_t, std::size_t)>>;
  const bool highest = order_ == PivotOrder::Highest;
  Heap heap([highest](std::size_t a, std::size_t b) { return highest ? a < b : a > b; });
  std::vector<std::size_t> touched;
  auto touch = [&](std::size_t c) {
    if (!marked[c]) {
      marked[c] = 1;
      touched.push_back(c);
      heap.push(c);
    }
  };
  for (const auto& [c, x] : v.entries()) {
    if (c >= dim_) throw std::out_of_range("SpanEchelon: column out of range");
    scratch[c] += x;
    touch(c);
  }
  std::vector<SparseVec::Entry> out;
  std::size_t lead = skip_leading && !v.empty() ? (highest ? v.entries().back().first : v.entries().front().first) : dim_;
  while (!heap.empty()) {
    std::size_t c = heap.top();
    heap.pop();
    Rational x = scratch[c];
    if (x.is_zero()) continue;
    long r = row_of_[c];
    if (r < 0 || c == lead) {
      out.emplace_back(c, x);
      continue;
    }
    scratch[c] = Rational(0);
    for (const auto& [j, y] : rows_[static_cast<std::size_t>(r)].entries()) {
      if (j == c) continue;
      scratch[j] -= x * y;
      touch(j);
    }
  }
  for (std::size_t c : touched) {
    scratch[c] = Rational(0);
    marked[c] = 0;
  }
  return SparseVec(std::move(out));
}

SparseVec SpanEchelon::reduce(const SparseVec& v) const { return eliminate(v, false); }

bool SpanEchelon::insert(const SparseVec& v) {
  SparseVec r = eliminate(v, false);
  if (r.empty()) return false;
  std::size_t p = order_ == PivotOrder::Highest ? r.entries().back().first : r.entries().front().first;
  r.scale(r.get(p).inverse());
  row_of_[p] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(r));
  pivot_of_row_.push_back(p);
  ++rank_;
  reduced_ = false;
  return true;
}

void SpanEchelon::make_reduced() {
  if (reduced_) return;
  // Rows whose pivots come first in elimination order are fixed last.
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  const bool highest = order_ == PivotOrder::Highest;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return highest ? pivot_of_row_[a] < pivot_of_row_[b] : pivot_of_row_[a] > pivot_of_row_[b];
  });
  for (std::size_t r : order) rows_[r] = eliminate(rows_[r], true);
  reduced_ = true;
}

std::vector<std::size_t> SpanEchelon::pivots() const {
  std::vector<std::size_t> p;
  for (std::size_t c = 0; c < dim_; ++c)
    if (row_of_[c] >= 0) p.push_back(c);
  return p;
}

std::vector<std::size_t> SpanEchelon::non_pivots() const {
  std::vector<std::size_t> p;
  for (std::size_t c = 0; c < dim_; ++c)
    if (row_of_[c] < 0) p.push_back(c);
  return p;
}

const SparseVec& SpanEchelon::row_for(std::size_t pivot) const {
  if (pivot >= dim_ || row_of_[pivot] < 0) throw std::out_of_range("SpanEchelon::row_for: not a pivot");
  return rows_[static_cast<std::size_t>(row_of_[pivot])];
}

}  // namespace grtk::exactla
