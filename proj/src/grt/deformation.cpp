#include "grtk/grt/deformation.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "grtk/freelie/lie.hpp"
#include "grtk/freelie/perm.hpp"

namespace grtk::grt {

using complexes::Gen;
using complexes::Wedge;
using dk::SetMap;
using exactla::SparseVec;
using exactla::SpanEchelon;
using freelie::Perm;

namespace {

// Coordinates on C_m(g(n))_w.
struct Grade {
  std::vector<Wedge> basis;
  std::map<Wedge, std::size_t> index;
};

const Grade& grade(int n, int w, int m) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<Grade>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{n, w, m}];
  if (!slot) {
    slot = std::make_unique<Grade>();
    slot->basis = complexes::ce_basis(n, w, m);
    for (std::size_t i = 0; i < slot->basis.size(); ++i) slot->index[slot->basis[i]] = i;
  }
  return *slot;
}

int wedge_weight(const Wedge& w) {
  int s = 0;
  for (Gen g : w) s += complexes::gen_weight(g);
  return s;
}

SparseVec coords(const Grade& g, const CEElement& c) {
  std::vector<SparseVec::Entry> e;
  for (const auto& [w, coef] : c.terms) e.emplace_back(g.index.at(w), coef);
  return SparseVec(std::move(e));
}

CEElement chain(int n, const Grade& g, const SparseVec& v) {
  CEElement c;
  c.n = n;
  for (const auto& [i, coef] : v.entries()) c.add(g.basis[i], coef);
  return c;
}

// Column j holds the image of the j-th basis wedge.
SparseMatrix ce_matrix(const dk::LieHom& h, int w, int m) {
  const Grade& src = grade(h.source(), w, m);
  const Grade& tgt = grade(h.target(), w, m);
  std::vector<SparseVec> cols;
  cols.reserve(src.basis.size());
  for (const auto& wedge : src.basis) {
    CEElement c;
    c.n = h.source();
    c.add(wedge, Rational(1));
    cols.push_back(coords(tgt, complexes::ce_map(h, c)));
  }
  return SparseMatrix::from_columns(tgt.basis.size(), cols);
}

const SparseMatrix& relabel_matrix(int n, int w, int m, const Perm& s) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, Perm>, std::unique_ptr<SparseMatrix>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({n, w, m, s});
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<SparseMatrix>(ce_matrix(*dk::direct_image_hom(SetMap(n, n, s)), w, m));
  std::lock_guard lock(mu);
  auto& slot = cache[{n, w, m, s}];
  if (!slot) slot = std::move(built);
  return *slot;
}

// Signed shuffle operators Σ c_τ sgn(τ) τ_* for an echelon basis of sh(n).
const std::vector<SparseMatrix>& signed_shuffle_operators(int n, int w, int m) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<std::vector<SparseMatrix>>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({n, w, m});
    if (it != cache.end()) return *it->second;
  }
  auto ops = std::make_unique<std::vector<SparseMatrix>>();
  const std::size_t d = grade(n, w, m).basis.size();
  for (const auto& row : freelie::shuffle_subspace(n)) {
    SparseMatrix op(d, d);
    for (const auto& [tau, c] : row.coeffs) op = op + (Rational(freelie::perm_sign(tau)) * c) * relabel_matrix(n, w, m, tau);
    ops->push_back(std::move(op));
  }
  std::lock_guard lock(mu);
  auto& slot = cache[{n, w, m}];
  if (!slot) slot = std::move(ops);
  return *slot;
}

std::vector<CEElement> rows_as_chains(int n, const Grade& g, SpanEchelon& ech) {
  ech.make_reduced();
  std::vector<CEElement> out;
  for (std::size_t p : ech.pivots()) out.push_back(chain(n, g, ech.row_for(p)));
  return out;
}

SetMap shift_injection(int p, int n, int offset) {
  std::vector<int> image(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) image[static_cast<std::size_t>(k)] = k + offset;
  return SetMap(p, n, image);
}

// Surjection [n] → [n−1] merging the 0-based points i−1 and i.
SetMap merge_map(int n, int i) {
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) image[static_cast<std::size_t>(k)] = k < i ? k : k - 1;
  return SetMap(n, n - 1, image);
}

std::vector<std::pair<int, std::shared_ptr<const dk::LieHom>>> coface_maps(int n) {
  std::vector<std::pair<int, std::shared_ptr<const dk::LieHom>>> out;
  out.emplace_back(1, dk::direct_image_hom(shift_injection(n - 1, n, 1)));
  for (int i = 1; i < n; ++i) out.emplace_back(i % 2 == 0 ? 1 : -1, dk::inverse_image_hom(merge_map(n, i)));
  out.emplace_back(n % 2 == 0 ? 1 : -1, dk::direct_image_hom(shift_injection(n - 1, n, 0)));
  return out;
}

// Colexicographic rank of a sorted subset.
std::size_t subset_rank(const std::vector<int>& s) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t b = 1;  // C(s[i], i + 1)
    for (std::size_t k = 0; k <= i; ++k) b = b * (static_cast<std::size_t>(s[i]) - k) / (k + 1);
    if (static_cast<std::size_t>(s[i]) >= i + 1) r += b;
  }
  return r;
}

std::size_t binomial(std::size_t a, std::size_t b) {
  if (b > a) return 0;
  std::size_t r = 1;
  for (std::size_t k = 0; k < b; ++k) r = r * (a - k) / (k + 1);
  return r;
}

int chain_weight(const CEElement& c) { return c.terms.empty() ? 0 : wedge_weight(c.terms.begin()->first); }

int chain_size(const CEElement& c) {
  return c.terms.empty() ? 0 : static_cast<int>(c.terms.begin()->first.size());
}

}  // namespace

int chain_length(int arity, int degree) { return arity - 2 - degree; }

void DerivationValue::add(const CEElement& c, const Rational& coef) {
  if (c.is_zero()) return;
  const int m = chain_length(c.n, degree);
  for (const auto& [w, x] : c.terms)
    if (static_cast<int>(w.size()) != m || wedge_weight(w) != weight)
      throw std::invalid_argument("DerivationValue::add: chain of the wrong degree or weight");
  auto& slot = components[c.n];
  slot.n = c.n;
  slot.add(c, coef);
  if (slot.is_zero()) components.erase(c.n);
}

bool DerivationValue::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

int DerivationValue::max_arity() const {
  for (auto it = components.rbegin(); it != components.rend(); ++it)
    if (!it->second.is_zero()) return it->first;
  return 0;
}

int DerivationValue::min_arity() const {
  for (const auto& [n, c] : components)
    if (!c.is_zero()) return n;
  return 0;
}

std::string DerivationValue::to_string() const {
  std::string s;
  for (const auto& [n, c] : components) {
    if (c.is_zero()) continue;
    if (!s.empty()) s += "; ";
    s += "m" + std::to_string(n) + " -> " + c.to_string();
  }
  return s.empty() ? "0" : s;
}

bool operator==(const DerivationValue& a, const DerivationValue& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.weight != b.weight || a.degree != b.degree) return false;
  std::map<int, CEElement> x, y;
  for (const auto& [n, c] : a.components)
    if (!c.is_zero()) x[n] = c;
  for (const auto& [n, c] : b.components)
    if (!c.is_zero()) y[n] = c;
  return x == y;
}

std::vector<CEElement> deformation_space(int arity, int weight, int ce_degree) {
  if (arity < 2) throw std::invalid_argument("deformation_space: arity must be at least 2");
  const int m = -ce_degree;
  if (m < 0) return {};
  const Grade& g = grade(arity, weight, m);
  const std::size_t d = g.basis.size();
  if (d == 0) return {};
  // lie(n) is cyclic on the left-normed bracket l0, so the invariants are spanned by p_n(l0 ⊗ c).
  // After evaluation only the σ with ⟨id, σ·l0⟩ ≠ 0 survive: σ = u⁻¹ for the words u of l0.
  std::vector<int> letters(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) letters[static_cast<std::size_t>(i)] = i;
  std::vector<std::pair<std::shared_ptr<const dk::LieHom>, Rational>> terms;
  for (const auto& [word, c] : freelie::expand(freelie::left_normed(letters))) {
    const Perm s = freelie::inverse(word.letters());
    terms.emplace_back(dk::direct_image_hom(SetMap(arity, arity, s)), Rational(freelie::perm_sign(s)) * c);
  }
  SpanEchelon ech(d, SpanEchelon::PivotOrder::Lowest);
  for (const auto& wedge : g.basis) {
    CEElement c, avg;
    c.n = avg.n = arity;
    c.add(wedge, Rational(1));
    for (const auto& [h, a] : terms) avg.add(complexes::ce_map(*h, c), a);
    ech.insert(coords(g, avg));
  }
  return rows_as_chains(arity, g, ech);
}

std::size_t invariant_rank(int arity, int weight, int ce_degree) {
  const int m = -ce_degree;
  if (arity < 2 || m < 0) return 0;
  const std::size_t d = grade(arity, weight, m).basis.size();
  if (d == 0) return 0;
  const auto lie = freelie::multilinear_basis(arity);
  const std::size_t L = lie.size();
  SparseMatrix p(L * d, L * d);
  for (const Perm& s : freelie::all_perms(arity)) {
    const Rational sg(freelie::perm_sign(s));
    const SparseMatrix& r = relabel_matrix(arity, weight, m, s);
    for (std::size_t i = 0; i < L; ++i) {
      const freelie::LieElement moved = freelie::relabel(lie[i], s);
      for (std::size_t i2 = 0; i2 < L; ++i2) {
        const Rational a = moved.coeff(lie[i2].terms().front().first);
        if (a.is_zero()) continue;
        for (std::size_t row = 0; row < d; ++row)
          for (const auto& [col, x] : r.row(row).entries()) p.add(i2 * d + row, i * d + col, sg * a * x);
      }
    }
  }
  return exactla::rank(p);
}

std::vector<CEElement> shuffle_kernel_space(int arity, int weight, int ce_degree) {
  const int m = -ce_degree;
  if (arity < 2 || m < 0) return {};
  const Grade& g = grade(arity, weight, m);
  const std::size_t d = g.basis.size();
  if (d == 0) return {};
  SparseMatrix stacked(0, d);
  for (const auto& op : signed_shuffle_operators(arity, weight, m)) stacked = stacked.vstack(op);
  SpanEchelon ech(d, SpanEchelon::PivotOrder::Lowest);
  for (const auto& k : exactla::kernel_basis(stacked)) ech.insert(SparseVec::from_dense(k));
  return rows_as_chains(arity, g, ech);
}

bool in_deformation_space(const CEElement& c) {
  if (c.is_zero()) return true;
  const int w = chain_weight(c), m = chain_size(c);
  const Grade& g = grade(c.n, w, m);
  const SparseVec v = coords(g, c);
  for (const auto& op : signed_shuffle_operators(c.n, w, m))
    if (!op.apply(v).empty()) return false;
  return true;
}

CEElement hochschild_weight_one(const CEElement& c) {
  const int n = c.n + 1;
  CEElement out;
  out.n = n;
  const int src_gens = dk::num_generators(c.n);
  for (int face = 0; face <= n; ++face) {
    // images[a]: generators of g([n]) hit by the generator a of g([n − 1])
    std::vector<std::vector<Gen>> images(static_cast<std::size_t>(src_gens));
    for (int a = 0; a < src_gens; ++a) {
      const auto [i, j] = dk::generator_points(c.n, a);
      auto& img = images[static_cast<std::size_t>(a)];
      if (face == 0 || face == n) {
        const int off = face == 0 ? 1 : 0;
        img.push_back(complexes::make_gen(1, static_cast<std::size_t>(dk::generator_index(n, i + off, j + off))));
      } else {
        const SetMap f = merge_map(n, face);
        for (int p = 0; p < n; ++p)
          for (int q = p + 1; q < n; ++q)
            if ((f(p) == i && f(q) == j) || (f(p) == j && f(q) == i))
              img.push_back(complexes::make_gen(1, static_cast<std::size_t>(dk::generator_index(n, p, q))));
      }
    }
    const Rational sign(face % 2 == 0 ? 1 : -1);
    for (const auto& [w, coef] : c.terms) {
      std::vector<std::pair<std::vector<Gen>, Rational>> partial{{{}, coef * sign}};
      for (Gen g : w) {
        if (complexes::gen_weight(g) != 1) throw std::invalid_argument("hochschild_weight_one: factor of weight above 1");
        std::vector<std::pair<std::vector<Gen>, Rational>> next;
        for (const auto& [f, x] : partial)
          for (Gen t : images[complexes::gen_index(g)]) {
            if (std::find(f.begin(), f.end(), t) != f.end()) continue;
            auto v = f;
            v.push_back(t);
            next.emplace_back(std::move(v), x);
          }
        partial = std::move(next);
      }
      for (auto& [f, x] : partial) {
        const int sg = complexes::wedge_normalize(f);
        if (sg != 0) out.add(f, Rational(sg) * x);
      }
    }
  }
  return out;
}

CEElement coface(const CEElement& c, int i) {
  const int n = c.n + 1;
  if (i < 0 || i > n) throw std::invalid_argument("coface: index out of range");
  return complexes::ce_map(*coface_maps(n)[static_cast<std::size_t>(i)].second, c);
}

CEElement hochschild(const CEElement& c) {
  const int n = c.n + 1;
  CEElement out;
  out.n = n;
  for (const auto& [sign, h] : coface_maps(n)) out.add(complexes::ce_map(*h, c), Rational(sign));
  return out;
}

namespace {

// D truncated to arities ≤ cap, without the support check.
DerivationValue differential_through(const DerivationValue& v, int arity_cap) {
  DerivationValue out;
  out.weight = v.weight;
  out.degree = v.degree + 1;
  const Rational sign(v.degree % 2 == 0 ? 1 : -1);
  for (int n = 2; n <= arity_cap; ++n) {
    CEElement c;
    c.n = n;
    if (auto it = v.components.find(n); it != v.components.end()) c.add(complexes::ce_boundary(it->second));
    if (auto it = v.components.find(n - 1); it != v.components.end()) c.add(hochschild(it->second), sign);
    out.add(c);
  }
  return out;
}

}  // namespace

DerivationValue deformation_differential(const DerivationValue& v, int arity_cap) {
  if (v.max_arity() >= arity_cap) throw std::invalid_argument("deformation_differential: support reaches the arity cap");
  return differential_through(v, arity_cap);
}

DerivationValue embed_grt(const DKElement& phi) {
  if (phi.points() != 3) throw std::invalid_argument("embed_grt: expected an element of g(3)");
  DerivationValue v;
  v.weight = phi.weight();
  v.degree = 0;
  CEElement c;
  c.n = 3;
  for (std::size_t k = 0; k < phi.coords().size(); ++k)
    if (!phi.coords()[k].is_zero()) c.add(Wedge{complexes::make_gen(phi.weight(), k)}, phi.coords()[k]);
  v.add(c);
  return v;
}

DerivationValue unit_value() {
  DerivationValue v;
  CEElement c;
  c.n = 2;
  c.add(Wedge{}, Rational(1));
  v.add(c);
  return v;
}

CoboundaryReport coboundary_test(const DerivationValue& target) {
  CoboundaryReport rep;
  const int w = target.weight, k = target.degree - 1;
  // A value of degree k carries C_{n−2−k}(g(n))_w at arity n, zero once n − 2 − k > w.
  const int top = std::max(2, w + 2 + k);
  rep.preimage_arity = top;
  if (!target.is_zero() && (target.min_arity() < 2 || target.max_arity() > top + 1))
    throw std::invalid_argument("coboundary_test: target outside the arities a preimage can reach");
  // Row blocks at arities 2..top use the quotient bases; the block at top + 1 receives only Hoch(ψ_top),
  // whose factors all have weight 1, so it is indexed by generator subsets and never needs g([top + 1]).
  std::vector<std::size_t> row_offset(static_cast<std::size_t>(top) + 2, 0);
  for (int r = 2; r <= top; ++r)
    row_offset[static_cast<std::size_t>(r) + 1] =
        row_offset[static_cast<std::size_t>(r)] + grade(r, w, chain_length(r, k + 1)).basis.size();
  const std::size_t last = row_offset[static_cast<std::size_t>(top) + 1];
  const int tail_length = chain_length(top + 1, k + 1);
  const std::size_t rows =
      last + (tail_length == w ? binomial(static_cast<std::size_t>(dk::num_generators(top + 1)), static_cast<std::size_t>(w)) : 0);
  auto flatten = [&](const DerivationValue& v) {
    std::vector<SparseVec::Entry> e;
    for (const auto& [r, c] : v.components) {
      if (r <= top) {
        const SparseVec x = coords(grade(r, w, chain_length(r, k + 1)), c);
        for (const auto& [i, y] : x.entries()) e.emplace_back(row_offset[static_cast<std::size_t>(r)] + i, y);
      } else {
        for (const auto& [wedge, y] : c.terms) {
          std::vector<int> subset;
          for (Gen g : wedge) subset.push_back(static_cast<int>(complexes::gen_index(g)));
          e.emplace_back(last + subset_rank(subset), y);
        }
      }
    }
    return SparseVec(std::move(e));
  };
  // Column space of D on the unknowns; the target is a coboundary iff it reduces to zero.
  SpanEchelon image(rows, SpanEchelon::PivotOrder::Lowest);
  const Rational sign(k % 2 == 0 ? 1 : -1);
  for (int a = 2; a <= top; ++a) {
    for (const CEElement& psi : deformation_space(a, w, -chain_length(a, k))) {
      DerivationValue probe;
      probe.weight = w;
      probe.degree = k;
      probe.add(psi);
      DerivationValue d = differential_through(probe, top);
      if (a == top && tail_length == w) d.add(hochschild_weight_one(psi), sign);
      image.insert(flatten(d));
      ++rep.preimage_dim;
    }
  }
  rep.rank = image.rank();
  rep.coboundary = image.reduce(flatten(target)).empty();
  return rep;
}

ClassVerdict cohomology_class_test(const DKElement& phi, int arity_window) {
  if (arity_window < 4) throw std::invalid_argument("cohomology_class_test: the arity window must be at least 4");
  ClassVerdict verdict;
  const DerivationValue f = embed_grt(phi);
  verdict.in_space = f.is_zero() || in_deformation_space(f.components.at(3));
  const DerivationValue df = deformation_differential(f, arity_window);
  verdict.cocycle = verdict.in_space && df.is_zero();
  if (!df.is_zero()) verdict.witness = df;
  const CoboundaryReport rep = coboundary_test(f);
  verdict.coboundary = rep.coboundary;
  verdict.preimage_dim = rep.preimage_dim;
  verdict.coboundary_rank = rep.rank;
  verdict.preimage_arity = rep.preimage_arity;
  return verdict;
}

}  // namespace grtk::grt
