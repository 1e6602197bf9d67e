#pragma once

#include <string>
#include <utility>
#include <vector>

#include "grtk/operadkit/operad.hpp"

namespace grtk::operadkit {

/// comm: one basis vector in every arity, all compositions identities.
struct Comm {
  using Key = int;  // always 0
  [[nodiscard]] std::string name() const { return "comm"; }
  [[nodiscard]] std::vector<Key> basis(int n) const { return n >= 1 ? std::vector<Key>{0} : std::vector<Key>{}; }
  [[nodiscard]] int degree(const Key&) const { return 0; }
  [[nodiscard]] OpElement<Key> compose(int n, int x, int m, const Key&, const Key&) const;
  [[nodiscard]] OpElement<Key> act(const Perm& s, const Key&) const;
  [[nodiscard]] Key unit() const { return 0; }
  [[nodiscard]] std::string key_string(const Key&) const { return "1"; }
};

/// comm{k}: the generator μ_n of comm{k}([n]) has degree k(n−1) and S_n acts by sgn^k.
/// The key is the arity itself, so degrees are visible to generic code.
///
/// For k = ±1, μ_n ∘_x μ_m = (−1)^{(m−1)x + m(n−1−x)} μ_{n+m−1} (x 0-based): the first
/// factor is the Koszul sign of inserting an operation of parity m−1 after x inputs,
/// the second moves the inserted block behind the remaining n−1−x inputs.
/// comm{k} = comm{±1}^{⊗|k|} contributes an extra (−1)^{C(|k|,2)(n−1)(m−1)}.
class CommShift {
 public:
  using Key = int;
  explicit CommShift(int k) : k_(k) {}
  [[nodiscard]] int shift() const { return k_; }
  [[nodiscard]] std::string name() const { return "comm{" + std::to_string(k_) + "}"; }
  [[nodiscard]] std::vector<Key> basis(int n) const { return n >= 1 ? std::vector<Key>{n} : std::vector<Key>{}; }
  [[nodiscard]] int degree(const Key& n) const { return k_ * (n - 1); }
  [[nodiscard]] OpElement<Key> compose(int n, int x, int m, const Key&, const Key&) const;
  [[nodiscard]] OpElement<Key> act(const Perm& s, const Key& n) const;
  [[nodiscard]] Key unit() const { return 1; }
  [[nodiscard]] std::string key_string(const Key& n) const { return "μ" + std::to_string(n); }

 private:
  int k_;
};

/// assoc: basis = total orders on [n], written as the sequence of points in increasing order.
struct Assoc {
  using Key = Perm;
  [[nodiscard]] std::string name() const { return "assoc"; }
  [[nodiscard]] std::vector<Key> basis(int n) const;
  [[nodiscard]] int degree(const Key&) const { return 0; }
  /// The order of [m] replaces x inside the order of [n].
  [[nodiscard]] OpElement<Key> compose(int n, int x, int m, const Key& a, const Key& b) const;
  [[nodiscard]] OpElement<Key> act(const Perm& s, const Key& a) const;
  [[nodiscard]] Key unit() const { return {0}; }
  [[nodiscard]] std::string key_string(const Key& a) const;  // "(1<2<3)"
};

/// Pointwise tensor product with factor-wise composition and the Koszul sign (−1)^{|a2||b1|}.
template <Operad A, Operad B>
class TensorOperad {
 public:
  using Key = std::pair<typename A::Key, typename B::Key>;
  TensorOperad(A a, B b) : a_(std::move(a)), b_(std::move(b)) {}

  [[nodiscard]] std::string name() const { return a_.name() + "⊗" + b_.name(); }
  [[nodiscard]] std::vector<Key> basis(int n) const {
    std::vector<Key> out;
    for (const auto& x : a_.basis(n))
      for (const auto& y : b_.basis(n)) out.emplace_back(x, y);
    return out;
  }
  [[nodiscard]] int degree(const Key& k) const { return a_.degree(k.first) + b_.degree(k.second); }
  [[nodiscard]] OpElement<Key> compose(int n, int x, int m, const Key& p, const Key& q) const {
    OpElement<Key> out;
    out.arity = n + m - 1;
    const Rational sign((b_.degree(p.second) * a_.degree(q.first)) % 2 == 0 ? 1 : -1);
    const auto l = a_.compose(n, x, m, p.first, q.first);
    const auto r = b_.compose(n, x, m, p.second, q.second);
    for (const auto& [u, c] : l.terms)
      for (const auto& [v, d] : r.terms) out.add({u, v}, sign * c * d);
    return out;
  }
  [[nodiscard]] OpElement<Key> act(const Perm& s, const Key& k) const {
    OpElement<Key> out;
    out.arity = static_cast<int>(s.size());
    const auto l = a_.act(s, k.first);
    const auto r = b_.act(s, k.second);
    for (const auto& [u, c] : l.terms)
      for (const auto& [v, d] : r.terms) out.add({u, v}, c * d);
    return out;
  }
  [[nodiscard]] Key unit() const { return {a_.unit(), b_.unit()}; }
  [[nodiscard]] std::string key_string(const Key& k) const { return a_.key_string(k.first) + "⊗" + b_.key_string(k.second); }

  [[nodiscard]] const A& left() const { return a_; }
  [[nodiscard]] const B& right() const { return b_; }

 private:
  A a_;
  B b_;
};

/// ε_n = (−1)^{(n−1)(n−2)/2}: the sign identifying comm{1}⊗comm{−1} with comm in arity n.
int tensor_shift_sign(int n);

}  // namespace grtk::operadkit
