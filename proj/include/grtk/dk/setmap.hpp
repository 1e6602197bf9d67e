#pragma once

#include <string>
#include <vector>

namespace grtk::dk {

/// Finite sets are canonical: [n] = {1..n}, stored as their size.
/// Internally points are 0-based.

/// A possibly partial map [source] -> [target].
class SetMap {
 public:
  static constexpr int kUndefined = -1;

  SetMap(int source, int target, std::vector<int> image);
  /// From 1-based images, 0 meaning undefined.
  static SetMap from_one_based(int target, const std::vector<int>& image);
  static SetMap identity(int n);
  /// Order-preserving injection [k] -> [n] with the given 1-based image, e.g. {1,3}.
  static SetMap increasing_injection(int n, const std::vector<int>& image_one_based);

  [[nodiscard]] int source() const { return source_; }
  [[nodiscard]] int target() const { return target_; }
  [[nodiscard]] int operator()(int p) const { return image_.at(static_cast<std::size_t>(p)); }
  [[nodiscard]] bool defined(int p) const { return (*this)(p) != kUndefined; }
  [[nodiscard]] const std::vector<int>& image() const { return image_; }

  [[nodiscard]] bool is_total() const;
  [[nodiscard]] bool is_injective() const;  // on its domain
  [[nodiscard]] bool is_surjective() const;
  [[nodiscard]] bool is_bijective() const { return is_total() && is_injective() && is_surjective(); }
  [[nodiscard]] std::vector<int> domain() const;
  /// Points of the source mapping to q.
  [[nodiscard]] std::vector<int> preimage(int q) const;

  /// Restriction to its domain, as a total map [|domain|] -> target (domain in increasing order).
  [[nodiscard]] SetMap restrict_to_domain() const;

  /// (this ∘ g)(p) = this(g(p)).
  [[nodiscard]] SetMap after(const SetMap& g) const;

  [[nodiscard]] std::string to_string() const;  // "[3]->[2]: 1>1 2>1 3>2"
  friend bool operator==(const SetMap&, const SetMap&) = default;

 private:
  int source_;
  int target_;
  std::vector<int> image_;
};

}  // namespace grtk::dk
