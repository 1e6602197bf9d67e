#include "grtk/operadkit/module.hpp"

#include <optional>

#include "grtk/dk/dk.hpp"

namespace grtk::operadkit {

using complexes::CEElement;
using dk::DKElement;
using dk::SetMap;

namespace {

OpElement<CommCEModule::Key> from_chain(int arity, const CEElement& c) {
  OpElement<CommCEModule::Key> e;
  e.arity = arity;
  for (const auto& [w, coef] : c.terms) e.add({1, arity, w}, coef);
  return e;
}

CEElement to_chain(const CommCEModule::Key& k) {
  CEElement c;
  c.n = k.points;
  c.add(k.wedge, Rational(1));
  return c;
}

}  // namespace

std::vector<CommCEModule::Key> CommCEModule::basis(int n) const {
  std::vector<Key> out{{0, n, {}}};
  for (int w = 0; w <= cap_; ++w)
    for (int m = 0; m <= w; ++m)
      for (const auto& wedge : complexes::ce_basis(n, w, m)) out.push_back({1, n, wedge});
  return out;
}

OpElement<CommCEModule::Key> CommCEModule::compose(int n, int x, int m, const Key& a, const Key& b) const {
  OpElement<Key> out;
  out.arity = n + m - 1;
  if (a.kind == 0 && b.kind == 0) {
    out.add({0, n + m - 1, {}}, Rational(1));
  } else if (a.kind == 0) {
    out = from_chain(n + m - 1, complexes::ce_map(*dk::direct_image_hom(dk::compose_inclusion(n, x, m)), to_chain(b)));
  } else if (b.kind == 0) {
    out = from_chain(n + m - 1, complexes::ce_map(*dk::inverse_image_hom(dk::compose_collapse(n, x, m)), to_chain(a)));
  }
  return out;
}

OpElement<CommCEModule::Key> CommCEModule::act(const Perm& s, const Key& k) const {
  const int n = static_cast<int>(s.size());
  if (k.kind == 0) {
    OpElement<Key> e;
    e.arity = n;
    e.add(k, Rational(1));
    return e;
  }
  return from_chain(n, complexes::ce_map(*dk::direct_image_hom(SetMap(n, n, s)), to_chain(k)));
}

std::string CommCEModule::key_string(const Key& k) const {
  return k.kind == 0 ? "1" : "[" + complexes::wedge_string(k.points, k.wedge) + "]";
}

AxiomReport dk_axiom_check(int size_cap, int weight_cap) {
  using Opt = std::optional<DKElement>;
  AxiomReport r;
  auto fail = [&](const std::string& what) {
    if (r.ok) r.failure = "dk: " + what;
    r.ok = false;
  };
  auto comp = [](int n, int x, int m, const Opt& a, const Opt& b) -> Opt {
    if (!a && !b) return std::nullopt;
    return dk::dk_compose(n, x, m, a, b);
  };
  auto same = [](const Opt& a, const Opt& b) {
    if (!a || !b) return (!a || a->is_zero()) && (!b || b->is_zero());
    return *a == *b;
  };
  auto relabel = [](const Perm& s, const Opt& a) -> Opt {
    if (!a) return std::nullopt;
    const int n = static_cast<int>(s.size());
    return dk::direct_image(SetMap(n, n, s), *a);
  };
  auto origins = [](int id, int n) {
    Origins v;
    for (int p = 0; p < n; ++p) v.emplace_back(id, p);
    return v;
  };
  // Every operand is either absent (the zero summand) or a quotient basis element.
  auto elements = [&](int n) {
    std::vector<DKElement> out;
    for (int w = 1; w <= weight_cap; ++w) {
      const auto basis = dk::dk_basis(n, w);
      for (std::size_t k = 0; k < basis->dim(); ++k) {
        std::vector<Rational> c(basis->dim());
        c[k] = Rational(1);
        out.emplace_back(basis, c);
      }
    }
    return out;
  };

  for (int n = 1; n <= size_cap; ++n)
    for (const auto& a : elements(n)) {
      ++r.checks;
      if (!same(comp(1, 0, n, std::nullopt, a), a)) fail("left unit on " + a.to_string());
      for (int x = 0; x < n; ++x) {
        ++r.checks;
        Perm to_end(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) to_end[static_cast<std::size_t>(p)] = p < x ? p : (p == x ? n - 1 : p - 1);
        if (!same(comp(n, x, 1, a, std::nullopt), relabel(to_end, a))) fail("right unit on " + a.to_string());
      }
    }

  for (int n = 1; n <= size_cap; ++n)
    for (int m = 1; n + m - 1 <= size_cap; ++m)
      for (int x = 0; x < n; ++x)
        for (int which = 0; which < 2; ++which) {
          const int size = which == 0 ? n : m;
          for (const auto& e : elements(size)) {
            const Opt a = which == 0 ? Opt(e) : Opt(), b = which == 1 ? Opt(e) : Opt();
            const Origins z = compose_origins(origins(0, n), x, origins(1, m));
            for (int i = 0; i + 1 < size; ++i) {
              ++r.checks;
              Perm s = freelie::identity_perm(size);
              std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i) + 1]);
              const int x2 = which == 0 ? s[static_cast<std::size_t>(x)] : x;
              Origins moved = z;
              for (auto& [id, p] : moved)
                if (id == which) p = s[static_cast<std::size_t>(p)];
              const Origins z2 = compose_origins(origins(0, n), x2, origins(1, m));
              const Opt lhs = relabel(match_origins(moved, z2), comp(n, x, m, a, b));
              const Opt rhs = comp(n, x2, m, which == 0 ? relabel(s, a) : a, which == 1 ? relabel(s, b) : b);
              if (!same(lhs, rhs)) fail("equivariance on " + e.to_string());
            }
          }
        }

  for (int n = 1; n <= size_cap; ++n)
    for (int m1 = 1; n + m1 - 1 <= size_cap; ++m1)
      for (int m2 = 1; n + m1 + m2 - 2 <= size_cap; ++m2)
        for (int which = 0; which < 3; ++which) {
          const int size = which == 0 ? n : (which == 1 ? m1 : m2);
          for (const auto& e : elements(size)) {
            const Opt a = which == 0 ? Opt(e) : Opt();
            const Opt b = which == 1 ? Opt(e) : Opt();
            const Opt c = which == 2 ? Opt(e) : Opt();
            const Origins oa = origins(0, n), ob = origins(1, m1), oc = origins(2, m2);
            for (int y = 0; y < n; ++y)
              for (int z = 0; z < n; ++z) {
                if (y == z) continue;
                ++r.checks;
                const int z1 = z < y ? z : z - 1, y1 = y < z ? y : y - 1;
                const Origins left = compose_origins(compose_origins(oa, y, ob), z1, oc);
                const Origins right = compose_origins(compose_origins(oa, z, oc), y1, ob);
                const Opt lhs = comp(n + m1 - 1, z1, m2, comp(n, y, m1, a, b), c);
                const Opt rhs = relabel(match_origins(right, left), comp(n + m2 - 1, y1, m1, comp(n, z, m2, a, c), b));
                if (!same(lhs, rhs)) fail("parallel associativity on " + e.to_string());
              }
            for (int y = 0; y < n; ++y)
              for (int z = 0; z < m1; ++z) {
                ++r.checks;
                const Origins left = compose_origins(oa, y, compose_origins(ob, z, oc));
                const Origins right = compose_origins(compose_origins(oa, y, ob), n - 1 + z, oc);
                const Opt lhs = comp(n, y, m1 + m2 - 1, a, comp(m1, z, m2, b, c));
                const Opt rhs = relabel(match_origins(right, left), comp(n + m1 - 1, n - 1 + z, m2, comp(n, y, m1, a, b), c));
                if (!same(lhs, rhs)) fail("nested associativity on " + e.to_string());
              }
          }
        }
  return r;
}

}  // namespace grtk::operadkit
