#include "grtk/grt/conditions.hpp"

#include <stdexcept>

#include "grtk/freelie/perm.hpp"

namespace grtk::grt {

using dk::SetMap;

namespace {

std::vector<DKElement> to_elements(int n, int w, const std::vector<std::vector<Rational>>& coords) {
  std::vector<DKElement> out;
  const auto basis = dk::dk_basis(n, w);
  out.reserve(coords.size());
  for (const auto& c : coords) out.emplace_back(basis, c);
  return out;
}

}  // namespace

std::shared_ptr<const dk::LieHom> word_relabel_hom(const std::string& word, WordConvention conv) {
  freelie::Perm p = freelie::parse_perm(word);
  if (conv == WordConvention::Inverse) p = freelie::inverse(p);
  const int n = static_cast<int>(p.size());
  return dk::direct_image_hom(SetMap(n, n, p));
}

SparseMatrix shuffle_condition(int w, WordConvention conv) {
  if (w < 1) throw std::invalid_argument("shuffle_condition: weight must be positive");
  const std::size_t d = dk::dk_basis(3, w)->dim();
  const SparseMatrix id = SparseMatrix::identity(d);
  const SparseMatrix first = word_relabel_hom("213", conv)->matrix(w) - word_relabel_hom("231", conv)->matrix(w) - id;
  const SparseMatrix second = word_relabel_hom("132", conv)->matrix(w) - word_relabel_hom("312", conv)->matrix(w) - id;
  return first.vstack(second);
}

const std::vector<PentagonTerm>& pentagon_terms() {
  static const std::vector<PentagonTerm> terms = [] {
    auto inc = [](std::vector<int> image) { return dk::direct_image_hom(SetMap::increasing_injection(4, image)); };
    auto sur = [](std::vector<int> image) { return dk::inverse_image_hom(SetMap::from_one_based(3, image)); };
    return std::vector<PentagonTerm>{
        {"(123)_*", 1, inc({1, 2, 3})},      {"(1(23)4)^*", 1, sur({1, 2, 2, 3})},
        {"(234)_*", 1, inc({2, 3, 4})},      {"(12(34))^*", -1, sur({1, 2, 3, 3})},
        {"((12)34)^*", -1, sur({1, 1, 2, 3})},
    };
  }();
  return terms;
}

SparseMatrix pentagon_condition(int w) {
  if (w < 1) throw std::invalid_argument("pentagon_condition: weight must be positive");
  SparseMatrix out(dk::dk_basis(4, w)->dim(), dk::dk_basis(3, w)->dim());
  for (const auto& t : pentagon_terms()) out = out + Rational(t.sign) * t.map->matrix(w);
  return out;
}

ConditionSystem condition_system(int w, WordConvention conv) {
  return {w, shuffle_condition(w, conv), pentagon_condition(w)};
}

std::vector<DKElement> shuffle_kernel(int w, WordConvention conv) {
  return to_elements(3, w, exactla::kernel_basis(shuffle_condition(w, conv)));
}

std::vector<DKElement> grt_basis(int w, WordConvention conv) {
  const ConditionSystem sys = condition_system(w, conv);
  return to_elements(3, w, exactla::kernel_basis(sys.shuffle_block.vstack(sys.pentagon_block)));
}

bool satisfies_conditions(const DKElement& phi, WordConvention conv) {
  if (phi.points() != 3) throw std::invalid_argument("satisfies_conditions: expected an element of g(3)");
  const SparseMatrix stacked = shuffle_condition(phi.weight(), conv).vstack(pentagon_condition(phi.weight()));
  return stacked.apply(phi.sparse()).empty();
}

}  // namespace grtk::grt
