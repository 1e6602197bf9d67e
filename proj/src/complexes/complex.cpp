#include "grtk/complexes/complex.hpp"

#include <algorithm>

namespace grtk::complexes {

using exactla::SparseVec;

std::size_t ChainComplex::dim(int degree, int weight) const {
  auto it = components.find({degree, weight});
  return it == components.end() ? 0 : it->second.size();
}

SparseMatrix ChainComplex::d(int degree, int weight) const {
  auto it = differentials.find({degree, weight});
  if (it != differentials.end()) return it->second;
  return SparseMatrix(dim(degree + 1, weight), dim(degree, weight));
}

std::optional<Cell> ChainComplex::dsquared_violation() const {
  for (const auto& [cell, labels] : components) {
    const auto [deg, w] = cell;
    if (dim(deg + 2, w) == 0 || labels.empty()) continue;
    if (!(d(deg + 1, w) * d(deg, w)).is_zero()) return cell;
  }
  return std::nullopt;
}

DSquaredError::DSquaredError(Cell c)
    : std::runtime_error("d∘d != 0 out of degree " + std::to_string(c.first) + ", weight " + std::to_string(c.second)),
      cell(c) {}

namespace {

template <typename Key>
std::map<Key, std::size_t> index_of(const std::vector<Key>& basis) {
  std::map<Key, std::size_t> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

}  // namespace

ChainComplex bar_complex(int n, int weight, int min_degree) {
  if (min_degree > -1) throw std::invalid_argument("bar_complex: min_degree must be <= -1");
  ChainComplex c;
  c.name = "bar";
  c.min_degree = min_degree;
  c.complete = weight == 0 || min_degree <= -weight;
  if (weight == 0) {
    c.components[{0, 0}] = {"[]"};
    return c;
  }
  std::vector<std::vector<BarWord>> bases(static_cast<std::size_t>(-min_degree) + 1);
  for (int l = 1; l <= -min_degree && l <= weight; ++l) {
    bases[static_cast<std::size_t>(l)] = bar_basis(n, weight, l);
    auto& labels = c.components[{-l, weight}];
    for (const auto& w : bases[static_cast<std::size_t>(l)]) labels.push_back(bar_word_string(n, w));
  }
  for (int l = 2; l <= -min_degree && l <= weight; ++l) {
    const auto& src = bases[static_cast<std::size_t>(l)];
    const auto tgt = index_of(bases[static_cast<std::size_t>(l - 1)]);
    SparseMatrix m(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      BarElement e;
      e.n = n;
      e.add(src[j], Rational(1));
      for (const auto& [w, coef] : bar_differential(e).terms) m.add(tgt.at(w), j, coef);
    }
    c.differentials[{-l, weight}] = std::move(m);
  }
  return c;
}

ChainComplex ce_complex(int n, int weight) {
  if (weight < 0) throw std::invalid_argument("ce_complex: negative weight");
  ChainComplex c;
  c.name = "ce";
  c.min_degree = -std::max(weight, 1);
  if (weight == 0) {
    c.components[{0, 0}] = {"1"};
    return c;
  }
  std::vector<std::vector<Wedge>> bases(static_cast<std::size_t>(weight) + 1);
  for (int m = 1; m <= weight; ++m) {
    bases[static_cast<std::size_t>(m)] = ce_basis(n, weight, m);
    if (bases[static_cast<std::size_t>(m)].empty()) continue;
    auto& labels = c.components[{-m, weight}];
    for (const auto& w : bases[static_cast<std::size_t>(m)]) labels.push_back(wedge_string(n, w));
  }
  for (int m = 2; m <= weight; ++m) {
    const auto& src = bases[static_cast<std::size_t>(m)];
    if (src.empty()) continue;
    const auto tgt = index_of(bases[static_cast<std::size_t>(m - 1)]);
    SparseMatrix mat(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      CEElement e;
      e.n = n;
      e.add(src[j], Rational(1));
      for (const auto& [w, coef] : ce_boundary(e).terms) mat.add(tgt.at(w), j, coef);
    }
    c.differentials[{-m, weight}] = std::move(mat);
  }
  return c;
}

std::map<Cell, std::size_t> homology_ranks(const ChainComplex& c) {
  if (auto bad = c.dsquared_violation()) throw DSquaredError(*bad);
  std::map<Cell, std::size_t> out;
  for (const auto& [cell, labels] : c.components) {
    const auto [deg, w] = cell;
    const std::size_t out_rank = exactla::rank(c.d(deg, w));
    const std::size_t in_rank = c.dim(deg - 1, w) ? exactla::rank(c.d(deg - 1, w)) : 0;
    out[cell] = labels.size() - out_rank - in_rank;
  }
  return out;
}

long euler_characteristic(const ChainComplex& c, int weight) {
  long chi = 0;
  for (const auto& [cell, labels] : c.components)
    if (cell.second == weight) chi += (cell.first % 2 == 0 ? 1 : -1) * static_cast<long>(labels.size());
  return chi;
}

SparseMatrix antisymmetrize_matrix(int n, int weight, int m) {
  const auto src = ce_basis(n, weight, m);
  const auto tgt = index_of(bar_basis(n, weight, m));
  SparseMatrix mat(tgt.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    CEElement e;
    e.n = n;
    e.add(src[j], Rational(1));
    for (const auto& [w, coef] : antisymmetrize(e).terms) mat.add(tgt.at(w), j, coef);
  }
  return mat;
}

std::vector<AntisymmetrizationCell> antisymmetrization_report(int n, int weight) {
  if (weight < 1) throw std::invalid_argument("antisymmetrization_report: weight must be >= 1");
  const ChainComplex ce = ce_complex(n, weight);
  const ChainComplex bar = bar_complex(n, weight, -weight);
  const auto h_ce = homology_ranks(ce);
  const auto h_bar = homology_ranks(bar);
  std::vector<AntisymmetrizationCell> out;
  for (int m = 1; m <= weight; ++m) {
    AntisymmetrizationCell cell;
    cell.degree = -m;
    const std::size_t dim_ce = ce.dim(-m, weight);
    cell.h_ce = dim_ce ? h_ce.at({-m, weight}) : 0;
    cell.h_bar = bar.dim(-m, weight) ? h_bar.at({-m, weight}) : 0;
    const SparseMatrix f = antisymmetrize_matrix(n, weight, m);
    if (m > 1) {
      const SparseMatrix f_low = antisymmetrize_matrix(n, weight, m - 1);
      cell.chain_map = bar.d(-m, weight) * f == f_low * ce.d(-m, weight);
    } else {
      cell.chain_map = true;  // both differentials vanish out of degree −1 (weight ≥ 1)
    }
    if (dim_ce == 0) {
      out.push_back(cell);
      continue;
    }
    // image of the cycles, taken modulo the bar boundaries
    const auto cycles = exactla::kernel_basis(ce.d(-m, weight));
    std::vector<SparseVec> cols;
    for (const auto& z : cycles) cols.push_back(f.apply(SparseVec::from_dense(z)));
    const SparseMatrix fz = SparseMatrix::from_columns(f.rows(), cols);
    const SparseMatrix boundaries = bar.d(-m - 1, weight);
    const std::size_t rb = exactla::rank(boundaries);
    cell.image_rank = exactla::rank(boundaries.hstack(fz)) - rb;
    out.push_back(cell);
  }
  return out;
}

std::pair<int, int> bar_grading(const BarElement& b) {
  if (b.terms.empty()) return {0, 0};
  const auto& w = b.terms.begin()->first;
  int weight = 0;
  for (const auto& f : w) weight += monomial_weight(f);
  const int len = static_cast<int>(w.size());
  for (const auto& [v, c] : b.terms) {
    int wv = 0;
    for (const auto& f : v) wv += monomial_weight(f);
    if (static_cast<int>(v.size()) != len || wv != weight) throw std::invalid_argument("bar element is not homogeneous");
  }
  return {len, weight};
}

bool is_bar_boundary(const BarElement& b) {
  if (b.is_zero()) return true;
  const auto [len, weight] = bar_grading(b);
  const auto tgt = index_of(bar_basis(b.n, weight, len));
  std::vector<Rational> rhs(tgt.size());
  for (const auto& [w, c] : b.terms) rhs[tgt.at(w)] = c;
  if (len + 1 > weight) return false;
  const auto src = bar_basis(b.n, weight, len + 1);
  SparseMatrix m(tgt.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    BarElement e;
    e.n = b.n;
    e.add(src[j], Rational(1));
    for (const auto& [w, coef] : bar_differential(e).terms) m.add(tgt.at(w), j, coef);
  }
  return exactla::solve(m, rhs);
}

nlohmann::json to_json(const ChainComplex& c) {
  nlohmann::json j;
  j["complex"] = c.name;
  j["min_degree"] = c.min_degree;
  j["complete"] = c.complete;
  auto cells = nlohmann::json::array();
  for (const auto& [cell, labels] : c.components) {
    nlohmann::json e;
    e["degree"] = cell.first;
    e["weight"] = cell.second;
    e["dimension"] = labels.size();
    e["basis"] = labels;
    cells.push_back(e);
  }
  j["cells"] = cells;
  auto ds = nlohmann::json::array();
  for (const auto& [cell, m] : c.differentials) {
    nlohmann::json e;
    e["degree"] = cell.first;
    e["weight"] = cell.second;
    e["rows"] = m.rows();
    e["cols"] = m.cols();
    auto t = nlohmann::json::array();
    for (const auto& [r, col, v] : m.triplets()) t.push_back(nlohmann::json::array({r, col, v}));
    e["entries"] = t;
    ds.push_back(e);
  }
  j["differentials"] = ds;
  return j;
}

}  // namespace grtk::complexes
