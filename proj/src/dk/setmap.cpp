#include "grtk/dk/setmap.hpp"

#include <algorithm>
#include <stdexcept>

namespace grtk::dk {

SetMap::SetMap(int source, int target, std::vector<int> image)
    : source_(source), target_(target), image_(std::move(image)) {
  if (source < 0 || target < 0) throw std::invalid_argument("SetMap: negative set size");
  if (static_cast<int>(image_.size()) != source) throw std::invalid_argument("SetMap: image length != source size");
  for (int q : image_)
    if (q != kUndefined && (q < 0 || q >= target)) throw std::invalid_argument("SetMap: image point out of range");
}

SetMap SetMap::from_one_based(int target, const std::vector<int>& image) {
  std::vector<int> im;
  for (int q : image) im.push_back(q == 0 ? kUndefined : q - 1);
  return SetMap(static_cast<int>(image.size()), target, im);
}

SetMap SetMap::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) im[static_cast<std::size_t>(p)] = p;
  return SetMap(n, n, im);
}

SetMap SetMap::increasing_injection(int n, const std::vector<int>& image_one_based) {
  if (!std::is_sorted(image_one_based.begin(), image_one_based.end()) ||
      std::adjacent_find(image_one_based.begin(), image_one_based.end()) != image_one_based.end())
    throw std::invalid_argument("increasing_injection: image must be strictly increasing");
  return from_one_based(n, image_one_based);
}

bool SetMap::is_total() const {
  return std::none_of(image_.begin(), image_.end(), [](int q) { return q == kUndefined; });
}

bool SetMap::is_injective() const {
  std::vector<char> hit(static_cast<std::size_t>(target_), 0);
  for (int q : image_) {
    if (q == kUndefined) continue;
    if (hit[static_cast<std::size_t>(q)]) return false;
    hit[static_cast<std::size_t>(q)] = 1;
  }
  return true;
}

bool SetMap::is_surjective() const {
  std::vector<char> hit(static_cast<std::size_t>(target_), 0);
  for (int q : image_)
    if (q != kUndefined) hit[static_cast<std::size_t>(q)] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

std::vector<int> SetMap::domain() const {
  std::vector<int> d;
  for (int p = 0; p < source_; ++p)
    if (defined(p)) d.push_back(p);
  return d;
}

std::vector<int> SetMap::preimage(int q) const {
  std::vector<int> out;
  for (int p = 0; p < source_; ++p)
    if ((*this)(p) == q) out.push_back(p);
  return out;
}

SetMap SetMap::restrict_to_domain() const {
  std::vector<int> im;
  for (int p : domain()) im.push_back((*this)(p));
  return SetMap(static_cast<int>(im.size()), target_, im);
}

SetMap SetMap::after(const SetMap& g) const {
  if (g.target_ != source_) throw std::invalid_argument("SetMap::after: not composable");
  std::vector<int> im;
  for (int p = 0; p < g.source_; ++p) im.push_back(g.defined(p) ? (*this)(g(p)) : kUndefined);
  return SetMap(g.source_, target_, im);
}

std::string SetMap::to_string() const {
  std::string s = "[" + std::to_string(source_) + "]->[" + std::to_string(target_) + "]:";
  for (int p = 0; p < source_; ++p) {
    s += " " + std::to_string(p + 1) + ">";
    s += defined(p) ? std::to_string((*this)(p) + 1) : std::string("_");
  }
  return s;
}

}  // namespace grtk::dk
