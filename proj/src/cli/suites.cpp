#include "grtk/cli/suites.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <stdexcept>

#include "grtk/cli/parallel.hpp"
#include "grtk/complexes/complex.hpp"
#include "grtk/dk/dk.hpp"
#include "grtk/exactla/sparse.hpp"
#include "grtk/freelie/perm.hpp"
#include "grtk/grt/conditions.hpp"
#include "grtk/grt/deformation.hpp"
#include "grtk/operadkit/free.hpp"
#include "grtk/operadkit/instances.hpp"
#include "grtk/operadkit/module.hpp"

namespace grtk::cli {

namespace {

using dk::DKElement;
using dk::LieHom;
using dk::SetMap;
using exactla::Rational;
using exactla::SparseMatrix;
using Task = std::function<CheckRow()>;

std::vector<CheckRow> run_tasks(const std::vector<Task>& tasks, int jobs) {
  return run_cells<CheckRow>(tasks.size(), jobs, [&](std::size_t i) { return tasks[i](); });
}

CheckRow start_row(const std::string& suite, const std::string& check) {
  CheckRow r;
  r.suite = suite;
  r.check = check;
  return r;
}

// Records the first failure only; later ones would just repeat the story.
void note(CheckRow& r, bool ok, const std::string& what) {
  ++r.checks;
  if (ok || !r.ok) return;
  r.ok = false;
  r.failure = what;
}

// ------------------------------------------------------------------ random maps

int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

SetMap random_injection(std::mt19937& rng, int n, int m) {
  std::vector<int> pts(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pts[static_cast<std::size_t>(i)] = i;
  std::shuffle(pts.begin(), pts.end(), rng);
  pts.resize(static_cast<std::size_t>(n));
  return SetMap(n, m, pts);
}

SetMap random_total(std::mt19937& rng, int n, int m) {
  std::vector<int> im;
  for (int i = 0; i < n; ++i) im.push_back(uniform(rng, 0, m - 1));
  return SetMap(n, m, im);
}

SetMap random_partial(std::mt19937& rng, int n, int m) {
  std::vector<int> im;
  for (int i = 0; i < n; ++i) im.push_back(uniform(rng, -1, m - 1));
  return SetMap(n, m, im);
}

// Σ c·h(w) over the Lyndon terms of a relator: zero exactly when h respects it.
bool kills_relators(const LieHom& h) {
  for (const auto& r : dk::relators(h.source())) {
    DKElement img = DKElement::zero(h.target(), 2);
    for (const auto& [w, c] : r.terms()) img += c * h.image_of_word(w);
    if (!img.is_zero()) return false;
  }
  return true;
}

// ------------------------------------------------------------------ relations

std::vector<CheckRow> relations_suite(int cap, int max_weight, int jobs) {
  const int wcap = std::min(max_weight, 4);
  std::vector<Task> tasks;
  using HomFor = std::function<std::shared_ptr<const LieHom>(const SetMap&)>;
  using MapGen = std::function<SetMap(std::mt19937&, int, int)>;
  auto relators_task = [&](const std::string& name, unsigned seed, MapGen gen, HomFor hom, bool needs_larger) {
    tasks.push_back([=] {
      auto r = start_row("relations", name);
      std::mt19937 rng(seed);
      for (int trial = 0; trial < 40; ++trial) {
        const int n = uniform(rng, 2, cap);
        const int m = needs_larger ? uniform(rng, n, cap) : uniform(rng, 2, cap);
        const SetMap f = gen(rng, n, m);
        // pullbacks go from g(m) to g(n); pushforwards from g(n) to g(m)
        note(r, kills_relators(*hom(f)), "relator survives under " + f.to_string());
      }
      return r;
    });
  };
  relators_task("relators/direct-image", 11, random_injection, dk::direct_image_hom, true);
  relators_task("relators/inverse-image", 12, random_total, dk::inverse_image_hom, false);
  relators_task("relators/partial-pullback", 13, random_partial, dk::partial_pullback_hom, false);

  // (g∘f) induces the composite of the induced maps, weight by weight.
  auto functor_task = [&](const std::string& name, unsigned seed, MapGen gen, HomFor hom, bool covariant) {
    tasks.push_back([=] {
      auto r = start_row("relations", name);
      std::mt19937 rng(seed);
      for (int trial = 0; trial < 12; ++trial) {
        int a = uniform(rng, 2, cap), b = uniform(rng, 2, cap), c = uniform(rng, 2, cap);
        if (covariant) {
          std::array<int, 3> s{a, b, c};
          std::sort(s.begin(), s.end());
          a = s[0], b = s[1], c = s[2];
        }
        const SetMap f = gen(rng, a, b), g = gen(rng, b, c);
        const auto hf = hom(f), hg = hom(g), hgf = hom(g.after(f));
        for (int w = 1; w <= wcap; ++w) {
          const SparseMatrix lhs = hgf->matrix(w);
          const SparseMatrix rhs = covariant ? hg->matrix(w) * hf->matrix(w) : hf->matrix(w) * hg->matrix(w);
          note(r, lhs == rhs, "composite of " + f.to_string() + " and " + g.to_string() + " at weight " + std::to_string(w));
        }
      }
      return r;
    });
  };
  functor_task("functoriality/direct-image", 21, random_injection, dk::direct_image_hom, true);
  functor_task("functoriality/inverse-image", 22, random_total, dk::inverse_image_hom, false);
  functor_task("functoriality/partial-pullback", 23, random_partial, dk::partial_pullback_hom, false);

  // f^! = i_* ∘ (f|_U)^* with i the inclusion of the domain
  tasks.push_back([=] {
    auto r = start_row("relations", "partial-pullback/factorization");
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const SetMap f = random_partial(rng, uniform(rng, 2, cap), uniform(rng, 2, cap));
      const auto dom = f.domain();
      if (dom.size() < 2) continue;
      std::vector<int> one_based;
      for (int p : dom) one_based.push_back(p + 1);
      const SetMap inc = SetMap::increasing_injection(f.source(), one_based);
      const auto lhs = dk::partial_pullback_hom(f);
      const auto inv = dk::inverse_image_hom(f.restrict_to_domain()), push = dk::direct_image_hom(inc);
      for (int w = 1; w <= wcap; ++w)
        note(r, lhs->matrix(w) == push->matrix(w) * inv->matrix(w), "factorization of " + f.to_string());
    }
    return r;
  });
  return run_tasks(tasks, jobs);
}

// ------------------------------------------------------------------ commutation

// Set partitions of [t] as restricted growth strings, i.e. surjections onto [blocks] up to relabeling.
void partitions(int t, std::vector<int>& cur, int blocks, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == t) {
    out.push_back(cur);
    return;
  }
  for (int b = 0; b <= blocks; ++b) {
    cur.push_back(b);
    partitions(t, cur, std::max(blocks, b + 1), out);
    cur.pop_back();
  }
}

// Images of f_* and g^* only depend on the image of f and the fibres of g, so subsets
// and set partitions already cover every qualifying pair.
CheckRow commutation_cell(int t, int weight_cap) {
  auto r = start_row("commutation", "T=[" + std::to_string(t) + "]");
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions(t, cur, 0, parts);
  for (unsigned mask = 0; mask < (1u << t); ++mask) {
    std::vector<int> subset;
    for (int p = 0; p < t; ++p)
      if (mask >> p & 1u) subset.push_back(p + 1);
    if (subset.size() < 2) continue;
    const SetMap f = SetMap::increasing_injection(t, subset);
    for (const auto& rgs : parts) {
      const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
      if (blocks < 2) continue;
      bool one_block = true;
      for (int p : subset) one_block = one_block && rgs[static_cast<std::size_t>(p - 1)] == rgs[static_cast<std::size_t>(subset[0] - 1)];
      if (!one_block) continue;
      const SetMap g(t, blocks, rgs);
      const auto res = dk::check_commutation(f, g, weight_cap);
      r.checks += res.pairs_checked;
      if (!res.ok && r.ok) {
        r.ok = false;
        r.failure = f.to_string() + " / " + g.to_string() + ": " + res.witness;
      }
    }
  }
  return r;
}

std::vector<CheckRow> commutation_suite(int cap, int max_weight, int jobs) {
  std::vector<Task> tasks;
  for (int t = 3; t <= cap; ++t) tasks.push_back([=] { return commutation_cell(t, max_weight); });
  return run_tasks(tasks, jobs);
}

// ------------------------------------------------------------------ operads

template <typename O>
Task axiom_task(std::string name, O o, int cap) {
  return [name, o, cap] {
    const auto rep = operadkit::axiom_check(o, cap);
    return CheckRow{"operad", name + " (size ≤ " + std::to_string(cap) + ")", rep.ok, rep.checks, rep.failure};
  };
}

std::vector<CheckRow> operad_suite(int cap, int max_weight, int jobs) {
  using operadkit::FreeOperad;
  const int small = std::min(cap, 4);
  const int wcap = std::min(max_weight, 2);
  std::vector<Task> tasks{
      axiom_task("comm", operadkit::Comm{}, cap),
      axiom_task("comm{1}", operadkit::CommShift(1), cap),
      axiom_task("comm{-1}", operadkit::CommShift(-1), cap),
      axiom_task("assoc", operadkit::Assoc{}, small),
      axiom_task("hoass'", FreeOperad(FreeOperad::Kind::HoAss, small), small),
      axiom_task("hocomm'", FreeOperad(FreeOperad::Kind::HoComm, small), small),
      axiom_task("hoass", operadkit::make_hoass(small), small),
      axiom_task("comm+C(g)", operadkit::CommCEModule(wcap), small),
      [=] {
        const auto rep = operadkit::dk_axiom_check(small, wcap);
        return CheckRow{"operad", "dk (size ≤ " + std::to_string(small) + ")", rep.ok, rep.checks, rep.failure};
      },
  };
  return run_tasks(tasks, jobs);
}

// ------------------------------------------------------------------ Jacobi

template <typename O>
operadkit::ElementOf<O> random_homogeneous(const O& o, int arity, std::mt19937& rng) {
  const auto basis = o.basis(arity);
  const auto& lead = basis[rng() % basis.size()];
  operadkit::ElementOf<O> e;
  e.arity = arity;
  for (const auto& k : basis)
    if (k != lead && o.degree(k) == o.degree(lead)) e.add(k, Rational(uniform(rng, -2, 2)));
  e.add(lead, Rational(uniform(rng, 1, 2)));
  return e;
}

template <typename O>
Task jacobi_task(std::string name, O o, int cap, unsigned seed) {
  return [name, o, cap, seed] {
    auto r = start_row("jacobi", name);
    std::mt19937 rng(seed);
    const int top = std::min(cap, 4);
    for (int na = 2; na <= top; ++na)
      for (int nb = 2; nb <= top; ++nb)
        for (int nc = 2; nc <= top; ++nc)
          for (int trial = 0; trial < 3 && na + nb + nc - 2 <= cap + 2; ++trial) {
            const auto a = random_homogeneous(o, na, rng), b = random_homogeneous(o, nb, rng);
            const auto c = random_homogeneous(o, nc, rng);
            note(r, operadkit::jacobi_defect(o, a, b, c).is_zero(),
                 "arities " + std::to_string(na) + "," + std::to_string(nb) + "," + std::to_string(nc));
          }
    return r;
  };
}

std::vector<CheckRow> jacobi_suite(int cap, int jobs) {
  using operadkit::FreeOperad;
  std::vector<Task> tasks{
      jacobi_task("assoc", operadkit::Assoc{}, cap, 41),
      jacobi_task("comm{1}", operadkit::CommShift(1), cap, 42),
      jacobi_task("hoass'", FreeOperad(FreeOperad::Kind::HoAss, cap + 2), cap, 43),
      jacobi_task("hocomm'", FreeOperad(FreeOperad::Kind::HoComm, cap + 2), cap, 44),
  };
  return run_tasks(tasks, jobs);
}

// ------------------------------------------------------------------ d²

CheckRow complex_row(const std::string& name, const complexes::ChainComplex& cx) {
  auto r = start_row("dsquared", name);
  const auto v = cx.dsquared_violation();
  note(r, !v, v ? "cell (" + std::to_string(v->first) + "," + std::to_string(v->second) + ")" : "");
  r.checks = cx.components.size();
  return r;
}

std::vector<CheckRow> dsquared_suite(int cap, int max_weight, int jobs) {
  using operadkit::FreeOperad;
  const int top = std::min(cap, 5);
  std::vector<Task> tasks;
  for (auto kind : {FreeOperad::Kind::HoAss, FreeOperad::Kind::HoComm})
    tasks.push_back([=] {
      const FreeOperad o(kind, top);
      const std::string name = kind == FreeOperad::Kind::HoAss ? "hoass'" : "hocomm'";
      auto r = start_row("dsquared", name + " (arity ≤ " + std::to_string(top) + ")");
      for (int n = 2; n <= top; ++n)
        for (const auto& k : o.basis(n)) {
          const auto e = operadkit::basis_element(o, n, k);
          note(r, o.differential(o.differential(e)).is_zero(), o.key_string(k));
        }
      return r;
    });
  tasks.push_back([=] {
    const int h_top = std::min(cap, 5);
    const auto h = operadkit::make_hoass(h_top);
    auto r = start_row("dsquared", "hoass (arity ≤ " + std::to_string(h_top) + ")");
    for (int n = 2; n <= h_top; ++n)
      for (const auto& k : h.basis(n)) {
        const auto e = operadkit::basis_element(h, n, k);
        note(r, operadkit::hoass_differential(h, operadkit::hoass_differential(h, e)).is_zero(), h.key_string(k));
      }
    return r;
  });
  const int lie_top = std::min(cap, 4), wtop = std::min(max_weight, 3);
  for (int n = 2; n <= lie_top; ++n)
    for (int w = 0; w <= wtop; ++w) {
      const std::string where = " g([" + std::to_string(n) + "]) weight " + std::to_string(w);
      tasks.push_back([=] { return complex_row("ce" + where, complexes::ce_complex(n, w)); });
      if (n <= 3) tasks.push_back([=] { return complex_row("bar" + where, complexes::bar_complex(n, w, std::min(-1, -w))); });
    }
  // D∘D on every basis value whose image stays within the cap
  for (int w = 0; w <= wtop; ++w)
    tasks.push_back([=] {
      auto r = start_row("dsquared", "deformation weight " + std::to_string(w));
      for (int n = 2; n < cap; ++n)
        for (int m = 0; m <= w; ++m)
          for (const auto& c : grt::deformation_space(n, w, -m)) {
            grt::DerivationValue v{w, n - 2 - m, {}};
            v.add(c);
            const auto d = grt::deformation_differential(v, n + 1);
            note(r, grt::deformation_differential(d, n + 2).is_zero(), v.to_string());
          }
      return r;
    });
  return run_tasks(tasks, jobs);
}

// ------------------------------------------------------------------ shuffles

std::size_t factorial(int n) { return n <= 1 ? 1 : static_cast<std::size_t>(n) * factorial(n - 1); }

// Rank of all shuffle sums, each part in every order, rebuilt from scratch.
std::size_t shuffle_rank(int n) {
  std::vector<exactla::SparseVec> rows;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> y, z;
    for (int p = 0; p < n; ++p) (mask >> p & 1u ? y : z).push_back(p);
    std::sort(y.begin(), y.end());
    do {
      std::sort(z.begin(), z.end());
      do rows.push_back(freelie::shuffle_sum(y, z).to_sparse());
      while (std::next_permutation(z.begin(), z.end()));
    } while (std::next_permutation(y.begin(), y.end()));
  }
  return exactla::rank(SparseMatrix::from_columns(factorial(n), rows));
}

std::vector<CheckRow> shuffles_suite(int cap, int max_weight, int jobs) {
  std::vector<Task> tasks;
  for (int n = 2; n <= std::min(cap, 5); ++n)
    tasks.push_back([=] {
      auto r = start_row("shuffles", "dim sh(" + std::to_string(n) + ")");
      const std::size_t expect = factorial(n) - factorial(n - 1);
      const std::size_t got = shuffle_rank(n);
      note(r, got == expect && freelie::shuffle_subspace(n).size() == expect,
           std::to_string(got) + " != " + std::to_string(expect));
      return r;
    });
  for (int w = 1; w <= max_weight; ++w)
    tasks.push_back([=] {
      auto r = start_row("shuffles", "signed shuffles at weight " + std::to_string(w));
      // grt elements vanish on signed shuffles, and the two equations carve out that kernel exactly
      for (const auto& phi : grt::grt_basis(w)) {
        const auto v = grt::embed_grt(phi);
        note(r, grt::in_deformation_space(v.components.at(3)), phi.to_string());
      }
      const auto eq = grt::shuffle_kernel(w);
      const auto full = grt::shuffle_kernel_space(3, w, -1);
      note(r, eq.size() == full.size(), "kernel dimensions " + std::to_string(eq.size()) + " vs " + std::to_string(full.size()));
      for (const auto& x : eq) note(r, grt::in_deformation_space(grt::embed_grt(x).components.at(3)), x.to_string());
      return r;
    });
  for (int n = 2; n <= std::min(cap, 4); ++n)
    tasks.push_back([=] {
      auto r = start_row("shuffles", "projector vs kernel, arity " + std::to_string(n));
      for (int w = 0; w <= std::min(max_weight, 3); ++w)
        for (int m = 0; m <= w; ++m) {
          const std::size_t a = grt::deformation_space(n, w, -m).size(), b = grt::shuffle_kernel_space(n, w, -m).size();
          note(r, a == b && a == grt::invariant_rank(n, w, -m),
               "weight " + std::to_string(w) + ", chains " + std::to_string(m));
        }
      return r;
    });
  return run_tasks(tasks, jobs);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"relations", "operad", "jacobi", "dsquared", "commutation", "shuffles"};
  return names;
}

std::vector<CheckRow> run_suite(const std::string& suite, int arity_cap, int max_weight, int jobs) {
  if (arity_cap < 2) throw std::invalid_argument("run_suite: arity cap must be at least 2");
  if (max_weight < 1) throw std::invalid_argument("run_suite: max weight must be positive");
  if (suite == "relations") return relations_suite(arity_cap, max_weight, jobs);
  if (suite == "operad") return operad_suite(arity_cap, max_weight, jobs);
  if (suite == "jacobi") return jacobi_suite(arity_cap, jobs);
  if (suite == "dsquared") return dsquared_suite(arity_cap, max_weight, jobs);
  if (suite == "commutation") return commutation_suite(arity_cap, max_weight, jobs);
  if (suite == "shuffles") return shuffles_suite(arity_cap, max_weight, jobs);
  throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
}

}  // namespace grtk::cli
