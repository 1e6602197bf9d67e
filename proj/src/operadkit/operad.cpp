#include <algorithm>
#include <cstdlib>

#include "grtk/operadkit/instances.hpp"
#include "grtk/operadkit/operad.hpp"

namespace grtk::operadkit {

Perm ordered_identification(int n, int x, int m) {
  Perm s(static_cast<std::size_t>(n + m - 1));
  for (int c = 0; c < n + m - 1; ++c) {
    if (c < x) s[static_cast<std::size_t>(c)] = c;
    else if (c < n - 1) s[static_cast<std::size_t>(c)] = c + m;
    else s[static_cast<std::size_t>(c)] = x + (c - n + 1);
  }
  return s;
}

Origins compose_origins(const Origins& a, int x, const Origins& b) {
  Origins out;
  for (int p = 0; p < static_cast<int>(a.size()); ++p)
    if (p != x) out.push_back(a[static_cast<std::size_t>(p)]);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Perm match_origins(const Origins& from, const Origins& to) {
  Perm s(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = std::find(to.begin(), to.end(), from[i]);
    if (it == to.end()) throw std::logic_error("match_origins: point without a partner");
    s[i] = static_cast<int>(it - to.begin());
  }
  return s;
}

OpElement<Comm::Key> Comm::compose(int n, int, int m, const Key&, const Key&) const {
  OpElement<Key> e;
  e.arity = n + m - 1;
  e.add(0, Rational(1));
  return e;
}

OpElement<Comm::Key> Comm::act(const Perm& s, const Key&) const {
  OpElement<Key> e;
  e.arity = static_cast<int>(s.size());
  e.add(0, Rational(1));
  return e;
}

OpElement<CommShift::Key> CommShift::compose(int n, int x, int m, const Key&, const Key&) const {
  const int a = std::abs(k_);
  int parity = a * ((m - 1) * x + m * (n - 1 - x));
  parity += (a * (a - 1) / 2) * (n - 1) * (m - 1);
  OpElement<Key> e;
  e.arity = n + m - 1;
  e.add(n + m - 1, Rational(parity % 2 == 0 ? 1 : -1));
  return e;
}

OpElement<CommShift::Key> CommShift::act(const Perm& s, const Key& n) const {
  OpElement<Key> e;
  e.arity = static_cast<int>(s.size());
  const int sign = (std::abs(k_) % 2 == 1) ? freelie::perm_sign(s) : 1;
  e.add(n, Rational(sign));
  return e;
}

std::vector<Assoc::Key> Assoc::basis(int n) const { return n >= 1 ? freelie::all_perms(n) : std::vector<Key>{}; }

OpElement<Assoc::Key> Assoc::compose(int n, int x, int m, const Key& a, const Key& b) const {
  Key out;
  for (int p : a) {
    if (p == x) {
      for (int q : b) out.push_back(n - 1 + q);
    } else {
      out.push_back(p < x ? p : p - 1);
    }
  }
  OpElement<Key> e;
  e.arity = n + m - 1;
  e.add(out, Rational(1));
  return e;
}

OpElement<Assoc::Key> Assoc::act(const Perm& s, const Key& a) const {
  Key out;
  for (int p : a) out.push_back(s[static_cast<std::size_t>(p)]);
  OpElement<Key> e;
  e.arity = static_cast<int>(s.size());
  e.add(out, Rational(1));
  return e;
}

std::string Assoc::key_string(const Key& a) const {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "<" : "") + std::to_string(a[i] + 1);
  return s + ")";
}

int tensor_shift_sign(int n) { return ((n - 1) * (n - 2) / 2) % 2 == 0 ? 1 : -1; }

}  // namespace grtk::operadkit
