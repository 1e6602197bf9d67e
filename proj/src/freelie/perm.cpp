#include "grtk/freelie/perm.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace grtk::freelie {

using exactla::Rational;
using exactla::SparseVec;

Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
  Perm c(a.size());
  for (std::size_t k = 0; k < b.size(); ++k) c[k] = a[static_cast<std::size_t>(b[k])];
  return c;
}

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) q[static_cast<std::size_t>(p[k])] = static_cast<int>(k);
  return q;
}

int perm_sign(const Perm& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

const std::vector<Perm>& all_perms(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Perm>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 0 || n > 9) throw std::invalid_argument("all_perms: n out of range");
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return cache.emplace(n, std::move(out)).first->second;
}

std::size_t perm_index(const Perm& p) {
  // Lehmer code in factorial base.
  std::size_t idx = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    idx = idx * (n - i) + smaller;
  }
  return idx;
}

std::string perm_string(const Perm& p) {
  std::string s;
  for (int k : p) s += std::to_string(k + 1);
  return s;
}

Perm parse_perm(const std::string& s) {
  Perm p;
  for (char c : s) {
    if (c < '1' || c > '9') throw std::invalid_argument("parse_perm: bad symbol");
    p.push_back(c - '1');
  }
  auto q = p;
  std::sort(q.begin(), q.end());
  if (q != identity_perm(static_cast<int>(p.size()))) throw std::invalid_argument("parse_perm: not a permutation");
  return p;
}

void PermutationVector::add(const Perm& p, const Rational& c) {
  auto [it, inserted] = coeffs.try_emplace(p, Rational(0));
  it->second += c;
  if (it->second.is_zero()) coeffs.erase(it);
}

SparseVec PermutationVector::to_sparse() const {
  std::vector<SparseVec::Entry> e;
  for (const auto& [p, c] : coeffs) e.emplace_back(perm_index(p), c);
  return SparseVec(std::move(e));
}

PermutationVector PermutationVector::from_sparse(int n, const SparseVec& v) {
  PermutationVector out;
  out.n = n;
  const auto& perms = all_perms(n);
  for (const auto& [i, c] : v.entries()) out.coeffs.emplace(perms.at(i), c);
  return out;
}

std::string PermutationVector::to_string() const {
  if (coeffs.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [p, c] : coeffs) {
    Rational a = c;
    if (!first) {
      s += a.sign() < 0 ? " - " : " + ";
      a = a.abs();
    } else if (a == Rational(-1)) {
      s += "-";
      a = Rational(1);
    }
    if (!a.is_one()) s += a.to_string() + "·";
    s += "(" + perm_string(p) + ")";
    first = false;
  }
  return s;
}

PermutationVector shuffle_sum(const std::vector<int>& Y, const std::vector<int>& Z, bool signed_sum) {
  PermutationVector out;
  out.n = static_cast<int>(Y.size() + Z.size());
  // Choose which positions hold Y's letters.
  std::vector<char> mask(Y.size() + Z.size(), 0);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(Y.size()), 1);
  std::sort(mask.begin(), mask.end());
  do {
    Perm w;
    std::size_t iy = 0, iz = 0;
    for (char m : mask) w.push_back(m ? Y[iy++] : Z[iz++]);
    out.add(w, Rational(signed_sum ? perm_sign(w) : 1));
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

std::vector<PermutationVector> shuffle_subspace(int n) {
  if (n < 1) throw std::invalid_argument("shuffle_subspace: n >= 1 required");
  const auto& perms = all_perms(n);
  exactla::SpanEchelon ech(perms.size(), exactla::SpanEchelon::PivotOrder::Lowest);
  // Y ranges over nonempty proper subsets, as bitmasks.
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> Y, Z;
    for (int k = 0; k < n; ++k) (mask >> k & 1 ? Y : Z).push_back(k);
    // each part carries every possible total order
    do {
      do ech.insert(shuffle_sum(Y, Z).to_sparse());
      while (std::next_permutation(Z.begin(), Z.end()));
    } while (std::next_permutation(Y.begin(), Y.end()));
  }
  ech.make_reduced();
  std::vector<PermutationVector> out;
  for (auto p : ech.pivots()) out.push_back(PermutationVector::from_sparse(n, ech.row_for(p)));
  return out;
}

}  // namespace grtk::freelie
