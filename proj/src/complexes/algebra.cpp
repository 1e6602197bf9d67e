#include "grtk/complexes/algebra.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>

namespace grtk::complexes {

namespace {

template <typename Key>
void add_term(std::map<Key, Rational>& terms, const Key& k, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

template <typename Key, typename Namer>
std::string combination_string(const std::map<Key, Rational>& terms, Namer name) {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, c] : terms) {
    Rational a = c;
    if (!first) {
      s += a.sign() < 0 ? " - " : " + ";
      a = a.abs();
    } else if (a == Rational(-1)) {
      s += "-";
      a = Rational(1);
    }
    if (!a.is_one()) s += a.to_string() + "·";
    s += name(k);
    first = false;
  }
  return s;
}

/// Bracket of two Gens as a combination of Gens.
std::vector<std::pair<Gen, Rational>> gen_bracket(int n, Gen a, Gen b) {
  std::vector<std::pair<Gen, Rational>> out;
  const int w = gen_weight(a) + gen_weight(b);
  for (const auto& [k, c] : dk::representative_bracket(n, gen_weight(a), gen_index(a), gen_weight(b), gen_index(b)).entries())
    out.emplace_back(make_gen(w, k), c);
  return out;
}

/// Images of a Gen under a Lie map, as Gens of the target.
std::vector<std::pair<Gen, Rational>> gen_image(const dk::LieHom& h, Gen g) {
  const auto& m = h.matrix(gen_weight(g));
  std::vector<std::pair<Gen, Rational>> out;
  // column gen_index(g) of the matrix
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational c = m.row(r).get(gen_index(g));
    if (!c.is_zero()) out.emplace_back(make_gen(gen_weight(g), r), c);
  }
  return out;
}

/// All ways to split a weight into `parts` positive integers, lexicographic.
void compositions(int w, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (w == 0) out.push_back(cur);
    return;
  }
  for (int k = 1; k <= w - (parts - 1); ++k) {
    cur.push_back(k);
    compositions(w - k, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::string gen_name(int n, Gen g) { return dk::dk_basis(n, gen_weight(g))->representative_strings().at(gen_index(g)); }

std::vector<Gen> gens_of_weight(int n, int w) {
  std::vector<Gen> out;
  if (w < 1) return out;
  for (std::size_t k = 0; k < dk::dk_basis(n, w)->dim(); ++k) out.push_back(make_gen(w, k));
  return out;
}

std::map<Gen, Rational> gen_combination(const dk::DKElement& x) {
  std::map<Gen, Rational> out;
  for (std::size_t k = 0; k < x.coords().size(); ++k)
    if (!x.coords()[k].is_zero()) out.emplace(make_gen(x.weight(), k), x.coords()[k]);
  return out;
}

// ---------------------------------------------------------------- envelope

int monomial_weight(const PBWMonomial& m) {
  int w = 0;
  for (Gen g : m) w += gen_weight(g);
  return w;
}

std::string monomial_string(int n, const PBWMonomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "*" : "") + gen_name(n, m[i]);
  return s;
}

std::vector<PBWMonomial> pbw_basis(int n, int w) {
  // Weakly increasing sequences of Gens: recurse on the smallest allowed Gen.
  std::vector<Gen> all;
  for (int k = 1; k <= w; ++k)
    for (Gen g : gens_of_weight(n, k)) all.push_back(g);
  std::vector<PBWMonomial> out;
  PBWMonomial cur;
  auto rec = [&](auto&& self, std::size_t start, int left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < all.size(); ++i) {
      if (gen_weight(all[i]) > left) continue;
      cur.push_back(all[i]);
      self(self, i, left - gen_weight(all[i]));
      cur.pop_back();
    }
  };
  rec(rec, 0, w);
  return out;
}

const UElement& normal_order(int n, const std::vector<Gen>& word) {
  static std::shared_mutex mu;
  static std::map<std::pair<int, std::vector<Gen>>, UElement> cache;
  const auto key = std::make_pair(n, word);
  {
    std::shared_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  UElement out;
  std::size_t i = 0;
  while (i + 1 < word.size() && word[i] <= word[i + 1]) ++i;
  if (i + 1 >= word.size()) {
    out.emplace(word, Rational(1));
  } else {
    // x_i x_{i+1} = x_{i+1} x_i + [x_i, x_{i+1}]
    std::vector<Gen> swapped = word;
    std::swap(swapped[i], swapped[i + 1]);
    for (const auto& [m, c] : normal_order(n, swapped)) add_term(out, m, c);
    for (const auto& [g, c] : gen_bracket(n, word[i], word[i + 1])) {
      std::vector<Gen> shorter(word.begin(), word.begin() + static_cast<long>(i));
      shorter.push_back(g);
      shorter.insert(shorter.end(), word.begin() + static_cast<long>(i) + 2, word.end());
      for (const auto& [m, d] : normal_order(n, shorter)) add_term(out, m, c * d);
    }
  }
  std::unique_lock lock(mu);
  return cache.try_emplace(key, std::move(out)).first->second;
}

UElement u_multiply(int n, const PBWMonomial& a, const PBWMonomial& b) {
  std::vector<Gen> word = a;
  word.insert(word.end(), b.begin(), b.end());
  return normal_order(n, word);
}

UElement u_map(const dk::LieHom& h, const PBWMonomial& m) {
  // Expand the product of the factor images word by word.
  std::map<std::vector<Gen>, Rational> words{{{}, Rational(1)}};
  for (Gen g : m) {
    std::map<std::vector<Gen>, Rational> next;
    auto img = gen_image(h, g);
    for (const auto& [w, c] : words)
      for (const auto& [t, d] : img) {
        auto v = w;
        v.push_back(t);
        add_term(next, v, c * d);
      }
    words = std::move(next);
  }
  UElement out;
  for (const auto& [w, c] : words)
    for (const auto& [mono, d] : normal_order(h.target(), w)) add_term(out, mono, c * d);
  return out;
}

// ----------------------------------------------------------------------- CE

void CEElement::add(const Wedge& w, const Rational& c) { add_term(terms, w, c); }
void CEElement::add(const CEElement& o, const Rational& c) {
  for (const auto& [w, d] : o.terms) add(w, c * d);
}
std::string CEElement::to_string() const {
  return combination_string(terms, [this](const Wedge& w) { return wedge_string(n, w); });
}

int wedge_normalize(std::vector<Gen>& f) {
  int sign = 1;
  for (std::size_t i = 1; i < f.size(); ++i)
    for (std::size_t j = i; j > 0 && f[j - 1] >= f[j]; --j) {
      if (f[j - 1] == f[j]) return 0;
      std::swap(f[j - 1], f[j]);
      sign = -sign;
    }
  return sign;
}

std::string wedge_string(int n, const Wedge& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "^" : "") + gen_name(n, w[i]);
  return s;
}

std::vector<Wedge> ce_basis(int n, int w, int m) {
  std::vector<Wedge> out;
  if (m == 0) {
    if (w == 0) out.emplace_back();
    return out;
  }
  std::vector<Gen> all;
  // the other m − 1 factors take weight at least 1 each
  for (int k = 1; k <= w - m + 1; ++k)
    for (Gen g : gens_of_weight(n, k)) all.push_back(g);
  Wedge cur;
  auto rec = [&](auto&& self, std::size_t start, int left, int count) -> void {
    if (count == 0) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < all.size(); ++i) {
      if (gen_weight(all[i]) > left) continue;
      cur.push_back(all[i]);
      self(self, i + 1, left - gen_weight(all[i]), count - 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, w, m);
  return out;
}

CEElement ce_boundary(const CEElement& c) {
  CEElement out;
  out.n = c.n;
  for (const auto& [w, coef] : c.terms) {
    const std::size_t m = w.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        // positions are 1-based in the sign (−1)^{i+j}
        const Rational s = ((i + j) % 2 == 0) ? coef : -coef;
        for (const auto& [g, b] : gen_bracket(c.n, w[i], w[j])) {
          std::vector<Gen> f{g};
          for (std::size_t k = 0; k < m; ++k)
            if (k != i && k != j) f.push_back(w[k]);
          int sign = wedge_normalize(f);
          if (sign != 0) out.add(f, Rational(sign) * s * b);
        }
      }
  }
  return out;
}

CEElement ce_map(const dk::LieHom& h, const CEElement& c) {
  if (c.n != h.source()) throw std::invalid_argument("ce_map: chain not over the source");
  CEElement out;
  out.n = h.target();
  for (const auto& [w, coef] : c.terms) {
    std::vector<std::pair<std::vector<Gen>, Rational>> partial{{{}, coef}};
    for (Gen g : w) {
      std::vector<std::pair<std::vector<Gen>, Rational>> next;
      auto img = gen_image(h, g);
      for (const auto& [f, x] : partial)
        for (const auto& [t, y] : img) {
          if (std::find(f.begin(), f.end(), t) != f.end()) continue;
          auto v = f;
          v.push_back(t);
          next.emplace_back(std::move(v), x * y);
        }
      partial = std::move(next);
    }
    for (auto& [f, x] : partial) {
      int sign = wedge_normalize(f);
      if (sign != 0) out.add(f, Rational(sign) * x);
    }
  }
  return out;
}

// ---------------------------------------------------------------------- bar

void BarElement::add(const BarWord& w, const Rational& c) { add_term(terms, w, c); }
void BarElement::add(const BarElement& o, const Rational& c) {
  for (const auto& [w, d] : o.terms) add(w, c * d);
}
std::string BarElement::to_string() const {
  return combination_string(terms, [this](const BarWord& w) { return bar_word_string(n, w); });
}

std::string bar_word_string(int n, const BarWord& w) {
  if (w.empty()) return "[]";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "|" : "") + monomial_string(n, w[i]);
  return s;
}

std::vector<BarWord> bar_basis(int n, int w, int l) {
  std::vector<BarWord> out;
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(w, l, cur, comps);
  for (const auto& comp : comps) {
    std::vector<std::vector<PBWMonomial>> factors;
    for (int k : comp) factors.push_back(pbw_basis(n, k));
    if (std::any_of(factors.begin(), factors.end(), [](const auto& f) { return f.empty(); })) continue;
    BarWord word(comp.size());
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      if (pos == comp.size()) {
        out.push_back(word);
        return;
      }
      for (const auto& m : factors[pos]) {
        word[pos] = m;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BarElement bar_differential(const BarElement& b) {
  BarElement out;
  out.n = b.n;
  for (const auto& [w, c] : b.terms) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Rational s = i % 2 == 0 ? c : -c;
      for (const auto& [m, d] : u_multiply(b.n, w[i], w[i + 1])) {
        if (m.empty()) continue;  // reduced complex: the k·1 part is dropped
        BarWord v(w.begin(), w.begin() + static_cast<long>(i));
        v.push_back(m);
        v.insert(v.end(), w.begin() + static_cast<long>(i) + 2, w.end());
        out.add(v, s * d);
      }
    }
  }
  return out;
}

BarElement bar_map(const dk::LieHom& h, const BarElement& b) {
  if (b.n != h.source()) throw std::invalid_argument("bar_map: element not over the source");
  BarElement out;
  out.n = h.target();
  for (const auto& [w, c] : b.terms) {
    std::vector<std::pair<BarWord, Rational>> partial{{{}, c}};
    for (const auto& m : w) {
      std::vector<std::pair<BarWord, Rational>> next;
      UElement img = u_map(h, m);
      for (const auto& [pre, x] : partial)
        for (const auto& [mono, y] : img) {
          if (mono.empty()) continue;
          auto v = pre;
          v.push_back(mono);
          next.emplace_back(std::move(v), x * y);
        }
      partial = std::move(next);
    }
    for (const auto& [v, x] : partial) out.add(v, x);
  }
  return out;
}

BarElement antisymmetrize(const CEElement& c) {
  BarElement out;
  out.n = c.n;
  for (const auto& [w, coef] : c.terms) {
    const std::size_t m = w.size();
    const Rational base = (m % 2 == 1 || m == 0) ? coef : -coef;  // (−1)^{m−1}
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      BarWord v;
      int sign = 1;
      for (std::size_t i = 0; i < m; ++i) {
        v.push_back({w[static_cast<std::size_t>(perm[i])]});
        for (std::size_t j = i + 1; j < m; ++j)
          if (perm[i] > perm[j]) sign = -sign;
      }
      out.add(v, Rational(sign) * base);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

BarElement shuffle_product(const BarElement& a, const BarElement& b) {
  if (a.n != b.n) throw std::invalid_argument("shuffle_product: different ground sets");
  BarElement out;
  out.n = a.n;
  for (const auto& [u, x] : a.terms)
    for (const auto& [v, y] : b.terms) {
      const std::size_t p = u.size(), q = v.size();
      std::vector<char> mask(p + q, 0);
      std::fill(mask.begin() + static_cast<long>(q), mask.end(), 1);  // 1 marks a factor of u
      // iterate masks in increasing order; the first has all of v before u, so start from the sorted mask
      std::sort(mask.begin(), mask.end());
      do {
        BarWord w;
        std::size_t iu = 0, iv = 0;
        int inversions = 0;
        for (char m : mask) {
          if (m) {
            w.push_back(u[iu++]);
          } else {
            w.push_back(v[iv++]);
            inversions += static_cast<int>(p - iu);  // v-factor jumps over the remaining u-factors
          }
        }
        out.add(w, (inversions % 2 == 0 ? Rational(1) : Rational(-1)) * x * y);
      } while (std::next_permutation(mask.begin(), mask.end()));
    }
  return out;
}

BarElement bar_compose(int n, int x, int m, const BarElement& a, const BarElement& b) {
  if (x < 0 || x >= n) throw std::invalid_argument("bar_compose: insertion point not in X");
  if (a.n != n || b.n != m) throw std::invalid_argument("bar_compose: operands over the wrong sets");
  auto pull = dk::inverse_image_hom(dk::compose_collapse(n, x, m));
  auto push = dk::direct_image_hom(dk::compose_inclusion(n, x, m));
  return shuffle_product(bar_map(*pull, a), bar_map(*push, b));
}

BarElement bar_unit(int n) {
  BarElement e;
  e.n = n;
  e.add(BarWord{}, Rational(1));
  return e;
}

BarElement bar_from_lie(const dk::DKElement& x) {
  BarElement e;
  e.n = x.points();
  for (const auto& [g, c] : gen_combination(x)) e.add(BarWord{{g}}, c);
  return e;
}

}  // namespace grtk::complexes
