#include "grtk/operadkit/free.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "grtk/exactla/sparse.hpp"

namespace grtk::operadkit {

namespace {

struct Node {
  int leaf = -1;
  std::vector<Node> kids;
};

Node decode(const Tree& t, std::size_t& pos) {
  Node n;
  const int v = t.at(pos++);
  if (v >= 0) {
    n.leaf = v;
    return n;
  }
  for (int i = 0; i < -v; ++i) n.kids.push_back(decode(t, pos));
  return n;
}

Node decode(const Tree& t) {
  std::size_t pos = 0;
  Node n = decode(t, pos);
  if (pos != t.size()) throw std::invalid_argument("malformed tree encoding");
  return n;
}

void encode(const Node& n, Tree& out) {
  if (n.leaf >= 0) {
    out.push_back(n.leaf);
    return;
  }
  out.push_back(-static_cast<int>(n.kids.size()));
  for (const auto& k : n.kids) encode(k, out);
}

Tree encode(const Node& n) {
  Tree t;
  encode(n, t);
  return t;
}

int min_leaf(const Node& n) {
  if (n.leaf >= 0) return n.leaf;
  int m = min_leaf(n.kids[0]);
  for (const auto& k : n.kids) m = std::min(m, min_leaf(k));
  return m;
}

int vertices(const Node& n) {
  if (n.leaf >= 0) return 0;
  int v = 1;
  for (const auto& k : n.kids) v += vertices(k);
  return v;
}

/// Echelon basis of sh(k) with pivots at the lexicographically largest orders.
const exactla::SpanEchelon& sh_echelon(int k) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<exactla::SpanEchelon>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[k];
  if (!slot) {
    std::size_t fact = 1;
    for (int i = 2; i <= k; ++i) fact *= static_cast<std::size_t>(i);
    slot = std::make_unique<exactla::SpanEchelon>(fact, exactla::SpanEchelon::PivotOrder::Highest);
    for (const auto& row : freelie::shuffle_subspace(k)) slot->insert(row.to_sparse());
    slot->make_reduced();
  }
  return *slot;
}

/// Koszul sign of laying out subtrees in planar order `tau` (ranks) starting from rank order.
int layout_sign(const std::vector<int>& tau, const std::vector<int>& degree_by_rank) {
  int parity = 0;
  for (std::size_t j = 0; j < tau.size(); ++j)
    for (std::size_t l = j + 1; l < tau.size(); ++l)
      if (tau[j] > tau[l])
        parity += degree_by_rank[static_cast<std::size_t>(tau[j])] * degree_by_rank[static_cast<std::size_t>(tau[l])];
  return parity % 2 == 0 ? 1 : -1;
}

/// Ranks of the children by smallest leaf, listed in planar order.
std::vector<int> child_word(const std::vector<Node>& kids) {
  std::vector<int> order(kids.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> mins;
  for (const auto& k : kids) mins.push_back(min_leaf(k));
  std::sort(order.begin(), order.end(), [&](int a, int b) { return mins[static_cast<std::size_t>(a)] < mins[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(kids.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  return rank;
}

bool is_normal(const Node& n) {
  if (n.leaf >= 0) return true;
  if (sh_echelon(static_cast<int>(n.kids.size())).is_pivot(freelie::perm_index(child_word(n.kids)))) return false;
  return std::all_of(n.kids.begin(), n.kids.end(), is_normal);
}

std::vector<std::pair<Node, Rational>> reduce_node(const Node& n) {
  if (n.leaf >= 0) return {{n, Rational(1)}};
  std::vector<std::pair<std::vector<Node>, Rational>> partial{{{}, Rational(1)}};
  for (const auto& k : n.kids) {
    std::vector<std::pair<std::vector<Node>, Rational>> next;
    const auto options = reduce_node(k);
    for (const auto& [pre, c] : partial)
      for (const auto& [opt, d] : options) {
        auto v = pre;
        v.push_back(opt);
        next.emplace_back(std::move(v), c * d);
      }
    partial = std::move(next);
  }
  const int k = static_cast<int>(n.kids.size());
  const auto& ech = sh_echelon(k);
  std::vector<std::pair<Node, Rational>> out;
  for (auto& [kids, c] : partial) {
    const std::vector<int> tau = child_word(kids);
    const std::size_t idx = freelie::perm_index(tau);
    if (!ech.is_pivot(idx)) {
      Node m;
      m.kids = std::move(kids);
      out.emplace_back(std::move(m), c);
      continue;
    }
    std::vector<Node> by_rank(kids.size());
    std::vector<int> deg(kids.size());
    for (std::size_t j = 0; j < kids.size(); ++j) {
      by_rank[static_cast<std::size_t>(tau[j])] = kids[j];
      deg[static_cast<std::size_t>(tau[j])] = vertices(kids[j]);
    }
    const int eps = layout_sign(tau, deg);
    const exactla::SparseVec rest = ech.reduce(exactla::SparseVec::unit(idx));
    for (const auto& [col, d] : rest.entries()) {
      const Perm& tau2 = freelie::all_perms(k)[col];
      Node m;
      for (int r : tau2) m.kids.push_back(by_rank[static_cast<std::size_t>(r)]);
      out.emplace_back(std::move(m), c * d * Rational(eps * layout_sign(tau2, deg)));
    }
  }
  return out;
}

void collect_shapes(int n, std::map<int, std::vector<Node>>& memo);

const std::vector<Node>& shapes(int n, std::map<int, std::vector<Node>>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  collect_shapes(n, memo);
  return memo.at(n);
}

void collect_shapes(int n, std::map<int, std::vector<Node>>& memo) {
  std::vector<Node> out;
  if (n == 1) {
    Node leaf;
    leaf.leaf = 0;
    out.push_back(leaf);
  } else {
    for (int k = 2; k <= n; ++k) {
      // compositions of n into k positive parts
      std::vector<int> parts;
      auto rec = [&](auto&& self, int left, int count) -> void {
        if (count == 0) {
          if (left != 0) return;
          std::vector<std::vector<Node>> choice{{}};
          for (int p : parts) {
            std::vector<std::vector<Node>> next;
            for (const auto& pre : choice)
              for (const auto& s : shapes(p, memo)) {
                auto v = pre;
                v.push_back(s);
                next.push_back(std::move(v));
              }
            choice = std::move(next);
          }
          for (auto& kids : choice) {
            Node v;
            v.kids = std::move(kids);
            out.push_back(std::move(v));
          }
          return;
        }
        for (int p = 1; p <= left - (count - 1); ++p) {
          parts.push_back(p);
          self(self, left - p, count - 1);
          parts.pop_back();
        }
      };
      rec(rec, n, k);
    }
  }
  memo[n] = std::move(out);
}

void label_leaves(Node& n, const Perm& labels, int& next) {
  if (n.leaf >= 0) {
    n.leaf = labels[static_cast<std::size_t>(next++)];
    return;
  }
  for (auto& k : n.kids) label_leaves(k, labels, next);
}

/// Calls f on every internal vertex with the number of vertices preceding it in pre-order.
template <typename F>
void for_each_vertex(Node& n, int& before, F&& f) {
  if (n.leaf >= 0) return;
  f(n, before);
  ++before;
  for (auto& k : n.kids) for_each_vertex(k, before, f);
}

}  // namespace

int tree_arity(const Tree& t) {
  return static_cast<int>(std::count_if(t.begin(), t.end(), [](int v) { return v >= 0; }));
}

int tree_vertices(const Tree& t) {
  return static_cast<int>(std::count_if(t.begin(), t.end(), [](int v) { return v < 0; }));
}

std::string tree_string(const Tree& t) {
  auto rec = [](auto&& self, const Node& n) -> std::string {
    if (n.leaf >= 0) return std::to_string(n.leaf + 1);
    std::string s = "m" + std::to_string(n.kids.size()) + "(";
    for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? "," : "") + self(self, n.kids[i]);
    return s + ")";
  };
  return rec(rec, decode(t));
}

Tree parse_tree(const std::string& s) {
  std::size_t pos = 0;
  auto rec = [&](auto&& self) -> Node {
    Node n;
    if (pos < s.size() && s[pos] == 'm') {
      ++pos;
      std::size_t used = 0;
      const int k = std::stoi(s.substr(pos), &used);
      pos += used;
      if (pos >= s.size() || s[pos] != '(') throw std::invalid_argument("parse_tree: expected '('");
      ++pos;
      for (int i = 0; i < k; ++i) {
        n.kids.push_back(self(self));
        const char expect = i + 1 < k ? ',' : ')';
        if (pos >= s.size() || s[pos] != expect) throw std::invalid_argument("parse_tree: malformed children list");
        ++pos;
      }
      return n;
    }
    std::size_t used = 0;
    n.leaf = std::stoi(s.substr(pos), &used) - 1;
    pos += used;
    return n;
  };
  Node n = rec(rec);
  if (pos != s.size()) throw std::invalid_argument("parse_tree: trailing characters");
  return encode(n);
}

std::vector<Tree> planar_trees(int n) {
  std::map<int, std::vector<Node>> memo;
  std::vector<Tree> out;
  for (const auto& shape : shapes(n, memo))
    for (const auto& labels : freelie::all_perms(n)) {
      Node t = shape;
      int next = 0;
      label_leaves(t, labels, next);
      out.push_back(encode(t));
    }
  std::sort(out.begin(), out.end());
  return out;
}

FreeOperad::FreeOperad(Kind kind, int arity_cap) : kind_(kind), cap_(arity_cap) {
  if (arity_cap < 1) throw std::invalid_argument("FreeOperad: arity cap must be positive");
}

std::vector<Tree> FreeOperad::basis(int n) const {
  if (n > cap_) throw std::invalid_argument("FreeOperad::basis: arity above the cap");
  auto all = planar_trees(n);
  if (kind_ == Kind::HoComm)
    std::erase_if(all, [](const Tree& t) { return !is_normal(decode(t)); });
  return all;
}

OpElement<Tree> FreeOperad::compose(int n, int x, int m, const Key& a, const Key& b) const {
  Tree out;
  int after = -1;  // vertices of a after leaf x
  for (int v : a) {
    if (v < 0) {
      out.push_back(v);
      if (after >= 0) ++after;
    } else if (v == x) {
      after = 0;
      for (int w : b) out.push_back(w < 0 ? w : n - 1 + w);
    } else {
      out.push_back(v < x ? v : v - 1);
    }
  }
  OpElement<Tree> e;
  e.arity = n + m - 1;
  e.add(out, Rational((tree_vertices(b) * after) % 2 == 0 ? 1 : -1));
  return kind_ == Kind::HoComm ? reduce(e) : e;
}

OpElement<Tree> FreeOperad::act(const Perm& s, const Key& t) const {
  Tree out = t;
  for (int& v : out)
    if (v >= 0) v = s[static_cast<std::size_t>(v)];
  OpElement<Tree> e;
  e.arity = static_cast<int>(s.size());
  e.add(out, Rational(1));
  return kind_ == Kind::HoComm ? reduce(e) : e;
}

OpElement<Tree> FreeOperad::generator(int k) const {
  if (k < 2) throw std::invalid_argument("generator: arity must be at least 2");
  Tree t{-k};
  for (int i = 0; i < k; ++i) t.push_back(i);
  OpElement<Tree> e;
  e.arity = k;
  e.add(t, Rational(1));
  return kind_ == Kind::HoComm ? reduce(e) : e;
}

OpElement<Tree> FreeOperad::reduce(const OpElement<Tree>& e) const {
  if (kind_ == Kind::HoAss) return e;
  OpElement<Tree> out;
  out.arity = e.arity;
  for (const auto& [t, c] : e.terms)
    for (const auto& [n, d] : reduce_node(decode(t))) out.add(encode(n), c * d);
  return out;
}

OpElement<Tree> hoass_tree_differential(const Tree& t) {
  OpElement<Tree> out;
  out.arity = tree_arity(t);
  const Node root = decode(t);
  const int total = vertices(root);
  for (int target = 0; target < total; ++target) {
    Node copy = root;
    Node* v = nullptr;
    int sign_before = 0;
    int before = 0;
    for_each_vertex(copy, before, [&](Node& n, int b) {
      if (b == target) {
        v = &n;
        sign_before = b;
      }
    });
    const int k = static_cast<int>(v->kids.size());
    const std::vector<Node> kids = v->kids;
    for (int i = 2; i <= k - 1; ++i) {
      const int j = k + 1 - i;
      int skipped = 0;  // vertices in the children left of the lower vertex
      for (int x = 0; x < i; ++x) {
        Node lower, top;
        for (int c = x; c < x + j; ++c) lower.kids.push_back(kids[static_cast<std::size_t>(c)]);
        for (int c = 0; c < x; ++c) top.kids.push_back(kids[static_cast<std::size_t>(c)]);
        top.kids.push_back(lower);
        for (int c = x + j; c < k; ++c) top.kids.push_back(kids[static_cast<std::size_t>(c)]);
        Node saved = *v;
        *v = top;
        out.add(encode(copy), Rational((1 + sign_before + skipped) % 2 == 0 ? 1 : -1));
        *v = saved;
        skipped += vertices(kids[static_cast<std::size_t>(x)]);
      }
    }
  }
  return out;
}

OpElement<Tree> FreeOperad::differential(const OpElement<Tree>& e) const {
  if (e.arity > cap_) throw std::invalid_argument("differential: arity above the cap");
  OpElement<Tree> out;
  out.arity = e.arity;
  for (const auto& [t, c] : e.terms) out.add(hoass_tree_differential(t), c);
  return kind_ == Kind::HoComm ? reduce(out) : out;
}

std::size_t FreeOperad::generator_space_dim(int k) const {
  std::size_t count = 0;
  for (const auto& t : basis(k))
    if (tree_vertices(t) == 1) ++count;
  return count;
}

HoAss make_hoass(int arity_cap) { return HoAss(FreeOperad(FreeOperad::Kind::HoAss, arity_cap), CommShift(-1)); }

OpElement<HoAss::Key> hoass_differential(const HoAss& o, const OpElement<HoAss::Key>& e) {
  OpElement<HoAss::Key> out;
  out.arity = e.arity;
  for (const auto& [k, c] : e.terms) {
    OpElement<Tree> t;
    t.arity = e.arity;
    t.add(k.first, Rational(1));
    for (const auto& [u, d] : o.left().differential(t).terms) out.add({u, k.second}, c * d);
  }
  return out;
}

}  // namespace grtk::operadkit
