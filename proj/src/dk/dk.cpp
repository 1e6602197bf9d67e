#include "grtk/dk/dk.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace grtk::dk {

using exactla::SpanEchelon;

// ------------------------------------------------------------------ generators

int num_generators(int n) { return n < 2 ? 0 : n * (n - 1) / 2; }

int generator_index(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("generator_index: bad pair");
  if (i > j) std::swap(i, j);
  // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> generator_points(int n, int letter) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (generator_index(n, i, j) == letter) return {i, j};
  throw std::out_of_range("generator_points: letter out of range");
}

std::string generator_name(int n, int letter) {
  auto [i, j] = generator_points(n, letter);
  if (n <= 9) return "t" + std::to_string(i + 1) + std::to_string(j + 1);
  return "t" + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

std::vector<LieElement> relators(int n) {
  std::vector<LieElement> out;
  auto gen = [n](int i, int j) { return LieElement::generator(generator_index(n, i, j)); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (k == i || k == j || l == i || l == j) continue;
          if (std::make_pair(i, j) < std::make_pair(k, l)) out.push_back(freelie::bracket(gen(i, j), gen(k, l)));
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        out.push_back(freelie::bracket(gen(i, j), gen(i, k) + gen(j, k)));
      }
  std::erase_if(out, [](const LieElement& x) { return x.is_zero(); });
  return out;
}

// --------------------------------------------------------------------- DKBasis

DKBasis::DKBasis(int points, int weight, const DKBasis* previous)
    : points_(points),
      weight_(weight),
      free_basis_(num_generators(points) > 0 && weight >= 1 ? freelie::lyndon_basis(num_generators(points), weight)
                                                            : std::vector<Word>{}),
      ideal_(free_basis_.size(), SpanEchelon::PivotOrder::Highest) {
  if (num_generators(points) > Word::kMaxLetters) throw std::invalid_argument("dk_basis: too many points");
  if (weight == 2) {
    for (const auto& r : relators(points)) ideal_.insert(free_coords(r));
  } else if (weight >= 3 && !free_basis_.empty()) {
    if (!previous) throw std::logic_error("DKBasis: missing previous weight");
    // I_w = [F_1, I_{w-1}]: bracket each generator with each reduced row of the previous ideal.
    const auto& prev_free = previous->free_basis();
    const auto& prev_ideal = previous->ideal();
    for (std::size_t p : prev_ideal.pivots()) {
      const SparseVec& row = prev_ideal.row_for(p);
      for (int a = 0; a < num_generators(points); ++a) {
        std::vector<SparseVec::Entry> acc;
        const Word letter = Word::letter(a);
        for (const auto& [j, c] : row.entries())
          for (const auto& [w, k] : freelie::bracket_words(letter, prev_free[j]))
            acc.emplace_back(free_index(w), c * Rational(k));
        ideal_.insert(SparseVec(std::move(acc)));
      }
    }
  }
  ideal_.make_reduced();
  rep_pos_.assign(free_basis_.size(), -1);
  for (std::size_t i = 0; i < free_basis_.size(); ++i)
    if (!ideal_.is_pivot(i)) {
      rep_pos_[i] = static_cast<long>(reps_.size());
      reps_.push_back(i);
    }
}

std::size_t DKBasis::free_index(const Word& w) const {
  auto it = std::lower_bound(free_basis_.begin(), free_basis_.end(), w);
  if (it == free_basis_.end() || *it != w) throw std::invalid_argument("DKBasis::free_index: word not in basis");
  return static_cast<std::size_t>(it - free_basis_.begin());
}

SparseVec DKBasis::project(const SparseVec& free) const {
  SparseVec r = ideal_.reduce(free);
  std::vector<SparseVec::Entry> out;
  out.reserve(r.nnz());
  for (const auto& [i, c] : r.entries()) out.emplace_back(static_cast<std::size_t>(rep_pos_[i]), c);
  return SparseVec(std::move(out));
}

std::vector<Rational> DKBasis::project(const LieElement& x) const { return project(free_coords(x)).to_dense(dim()); }

SparseVec DKBasis::free_coords(const LieElement& x) const {
  if (!x.is_zero() && x.weight() != weight_) throw std::invalid_argument("DKBasis: element of the wrong weight");
  std::vector<SparseVec::Entry> e;
  for (const auto& [w, c] : x.terms()) e.emplace_back(free_index(w), c);
  return SparseVec(std::move(e));
}

LieElement DKBasis::lift(const std::vector<Rational>& coords) const {
  if (coords.size() != dim()) throw std::invalid_argument("DKBasis::lift: coordinate length");
  std::vector<LieElement::Term> t;
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (!coords[k].is_zero()) t.emplace_back(representative(k), coords[k]);
  return LieElement(weight_, std::move(t));
}

const SparseMatrix& DKBasis::projection() const {
  std::call_once(projection_once_, [this] {
    std::vector<SparseVec> cols;
    cols.reserve(free_basis_.size());
    for (std::size_t i = 0; i < free_basis_.size(); ++i) cols.push_back(project(SparseVec::unit(i)));
    projection_ = SparseMatrix::from_columns(dim(), cols);
  });
  return projection_;
}

std::vector<std::string> DKBasis::representative_strings() const {
  std::vector<std::string> out;
  const int n = points_;
  for (std::size_t k = 0; k < dim(); ++k)
    out.push_back(freelie::bracket_string(representative(k), [n](int a) { return generator_name(n, a); }));
  return out;
}

std::shared_ptr<const DKBasis> dk_basis(int n, int w) {
  if (n < 0 || w < 0) throw std::invalid_argument("dk_basis: negative argument");
  using Future = std::shared_future<std::shared_ptr<const DKBasis>>;
  static std::mutex mu;
  static std::map<std::pair<int, int>, Future> cache;
  std::promise<std::shared_ptr<const DKBasis>> promise;
  std::optional<Future> pending;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({n, w});
    if (it != cache.end()) {
      pending = it->second;
    } else {
      cache.emplace(std::make_pair(n, w), promise.get_future().share());
    }
  }
  if (pending) return pending->get();
  try {
    std::shared_ptr<const DKBasis> prev = w >= 3 ? dk_basis(n, w - 1) : nullptr;
    auto b = std::make_shared<const DKBasis>(n, w, prev.get());
    promise.set_value(b);
    return b;
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
}

// ------------------------------------------------------------------- DKElement

DKElement::DKElement(std::shared_ptr<const DKBasis> basis)
    : basis_(std::move(basis)), coords_(basis_->dim()) {}

DKElement::DKElement(std::shared_ptr<const DKBasis> basis, std::vector<Rational> coords)
    : basis_(std::move(basis)), coords_(std::move(coords)) {
  if (coords_.size() != basis_->dim()) throw std::invalid_argument("DKElement: coordinate length mismatch");
}

DKElement DKElement::t(int n, int i, int j) {
  return from_free(n, LieElement::generator(generator_index(n, i - 1, j - 1)));
}

DKElement DKElement::from_free(int n, const LieElement& x) {
  auto b = dk_basis(n, x.weight());
  return DKElement(b, b->project(x));
}

bool DKElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c.is_zero(); });
}

namespace {
void check_same_space(const DKElement& a, const DKElement& b) {
  if (a.points() != b.points() || a.weight() != b.weight())
    throw std::invalid_argument("DKElement: operands live in different spaces");
}
}  // namespace

DKElement& DKElement::operator+=(const DKElement& o) {
  check_same_space(*this, o);
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
  return *this;
}

DKElement& DKElement::operator-=(const DKElement& o) {
  check_same_space(*this, o);
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
  return *this;
}

DKElement& DKElement::operator*=(const Rational& c) {
  for (auto& x : coords_) x *= c;
  return *this;
}

bool operator==(const DKElement& a, const DKElement& b) {
  return a.points() == b.points() && a.weight() == b.weight() && a.coords_ == b.coords_;
}

std::string DKElement::to_string() const {
  const int n = points();
  return basis_->lift(coords_).to_string([n](int a) { return generator_name(n, a); });
}

// -------------------------------------------------------------------- brackets

const SparseVec& representative_bracket(int n, int a, std::size_t k, int b, std::size_t l) {
  using Key = std::tuple<int, int, std::size_t, int, std::size_t>;
  static std::shared_mutex mu;
  static std::map<Key, SparseVec> cache;
  const Key key{n, a, k, b, l};
  {
    std::shared_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto ba = dk_basis(n, a), bb = dk_basis(n, b), bs = dk_basis(n, a + b);
  const auto& br = freelie::bracket_words(ba->representative(k), bb->representative(l));
  std::vector<SparseVec::Entry> e;
  for (const auto& [w, c] : br) e.emplace_back(bs->free_index(w), Rational(c));
  SparseVec v = bs->project(SparseVec(std::move(e)));
  std::unique_lock lock(mu);
  return cache.try_emplace(key, std::move(v)).first->second;
}

DKElement bracket(const DKElement& x, const DKElement& y) {
  if (x.points() != y.points()) throw std::invalid_argument("bracket: elements of different g(T)");
  const int n = x.points();
  DKElement out = DKElement::zero(n, x.weight() + y.weight());
  std::vector<Rational> acc(out.coords().size());
  for (std::size_t k = 0; k < x.coords().size(); ++k) {
    if (x.coords()[k].is_zero()) continue;
    for (std::size_t l = 0; l < y.coords().size(); ++l) {
      if (y.coords()[l].is_zero()) continue;
      Rational c = x.coords()[k] * y.coords()[l];
      for (const auto& [i, v] : representative_bracket(n, x.weight(), k, y.weight(), l).entries()) acc[i] += c * v;
    }
  }
  return DKElement(out.basis_ptr(), std::move(acc));
}

DKElement dilation(const Rational& x, const DKElement& a) { return exactla::pow(x, static_cast<unsigned>(a.weight())) * a; }

// ---------------------------------------------------------------------- LieHom

LieHom::LieHom(int source, int target, std::vector<DKElement> images)
    : source_(source), target_(target), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != num_generators(source))
    throw std::invalid_argument("LieHom: one image per generator required");
  for (const auto& im : images_)
    if (im.points() != target || im.weight() != 1) throw std::invalid_argument("LieHom: images must be weight-1 elements of the target");
}

DKElement LieHom::image_of_word(const Word& w) const {
  {
    std::lock_guard lock(mu_);
    auto it = word_cache_.find(w);
    if (it != word_cache_.end()) return it->second;
  }
  DKElement r;
  if (w.size() == 1) {
    r = images_.at(static_cast<std::size_t>(w[0]));
  } else {
    auto [u, v] = freelie::standard_factorization(w);
    r = bracket(image_of_word(u), image_of_word(v));
  }
  std::lock_guard lock(mu_);
  return word_cache_.try_emplace(w, r).first->second;
}

const SparseMatrix& LieHom::matrix(int w) const {
  {
    std::lock_guard lock(mu_);
    auto it = matrix_cache_.find(w);
    if (it != matrix_cache_.end()) return *it->second;
  }
  auto src = dk_basis(source_, w);
  auto tgt = dk_basis(target_, w);
  std::vector<SparseVec> cols;
  for (std::size_t k = 0; k < src->dim(); ++k) cols.push_back(image_of_word(src->representative(k)).sparse());
  auto m = std::make_shared<const SparseMatrix>(SparseMatrix::from_columns(tgt->dim(), cols));
  std::lock_guard lock(mu_);
  return *matrix_cache_.try_emplace(w, m).first->second;
}

DKElement LieHom::apply(const DKElement& a) const {
  if (a.points() != source_) throw std::invalid_argument("LieHom::apply: element not in the source");
  const auto& m = matrix(a.weight());
  return DKElement(dk_basis(target_, a.weight()), m.apply(a.coords()));
}

namespace {

using HomKey = std::tuple<int, int, int, std::vector<int>>;

std::shared_ptr<const LieHom> cached_hom(int kind, const SetMap& f, const std::function<std::shared_ptr<const LieHom>()>& make) {
  static std::mutex mu;
  static std::map<HomKey, std::shared_ptr<const LieHom>> cache;
  HomKey key{kind, f.source(), f.target(), f.image()};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto h = make();
  std::lock_guard lock(mu);
  return cache.try_emplace(key, h).first->second;
}

/// Generator t_ij of [source] goes to the sum of t_pq over pairs with g(p) = i, g(q) = j,
/// where g: [target] ⇀ [source] is the (possibly partial) map being pulled back along.
std::vector<DKElement> pullback_images(const SetMap& g) {
  const int n = g.target(), m = g.source();
  std::vector<DKElement> images;
  for (int a = 0; a < num_generators(n); ++a) {
    auto [i, j] = generator_points(n, a);
    std::vector<LieElement::Term> terms;
    for (int p : g.preimage(i))
      for (int q : g.preimage(j)) terms.emplace_back(Word::letter(generator_index(m, p, q)), Rational(1));
    images.push_back(DKElement::from_free(m, LieElement(1, terms)));
  }
  return images;
}

}  // namespace

std::shared_ptr<const LieHom> direct_image_hom(const SetMap& f) {
  if (!f.is_total() || !f.is_injective()) throw std::invalid_argument("direct_image: map must be injective and total");
  return cached_hom(0, f, [&f] {
    std::vector<DKElement> images;
    const int n = f.source(), m = f.target();
    for (int a = 0; a < num_generators(n); ++a) {
      auto [i, j] = generator_points(n, a);
      images.push_back(DKElement::from_free(m, LieElement::generator(generator_index(m, f(i), f(j)))));
    }
    return std::make_shared<const LieHom>(n, m, std::move(images));
  });
}

std::shared_ptr<const LieHom> inverse_image_hom(const SetMap& f) {
  if (!f.is_total()) throw std::invalid_argument("inverse_image: map must be total");
  return cached_hom(1, f, [&f] { return std::make_shared<const LieHom>(f.target(), f.source(), pullback_images(f)); });
}

std::shared_ptr<const LieHom> partial_pullback_hom(const SetMap& f) {
  // Undefined points have empty fibres, so the generator formula already factors through the domain.
  return cached_hom(2, f, [&f] { return std::make_shared<const LieHom>(f.target(), f.source(), pullback_images(f)); });
}

DKElement direct_image(const SetMap& f, const DKElement& a) { return direct_image_hom(f)->apply(a); }
DKElement inverse_image(const SetMap& f, const DKElement& a) { return inverse_image_hom(f)->apply(a); }
DKElement partial_pullback(const SetMap& f, const DKElement& a) { return partial_pullback_hom(f)->apply(a); }

// ----------------------------------------------------------------- composition

SetMap compose_collapse(int n, int x, int m) {
  if (x < 0 || x >= n) throw std::invalid_argument("dk_compose: insertion point not in X");
  std::vector<int> im;
  for (int k = 0; k < n - 1; ++k) im.push_back(k < x ? k : k + 1);
  for (int k = 0; k < m; ++k) im.push_back(x);
  return SetMap(n - 1 + m, n, im);
}

SetMap compose_inclusion(int n, int x, int m) {
  if (x < 0 || x >= n) throw std::invalid_argument("dk_compose: insertion point not in X");
  std::vector<int> im;
  for (int k = 0; k < m; ++k) im.push_back(n - 1 + k);
  return SetMap(m, n - 1 + m, im);
}

DKElement dk_compose(int n, int x, int m, const std::optional<DKElement>& a, const std::optional<DKElement>& b) {
  if (x < 0 || x >= n) throw std::invalid_argument("dk_compose: insertion point not in X");
  if (!a && !b) throw std::invalid_argument("dk_compose: nothing to compose");
  if (a && a->points() != n) throw std::invalid_argument("dk_compose: a must live over X");
  if (b && b->points() != m) throw std::invalid_argument("dk_compose: b must live over Y");
  if (a && b && a->weight() != b->weight()) throw std::invalid_argument("dk_compose: summands of different weight");
  std::optional<DKElement> out;
  if (a) out = inverse_image(compose_collapse(n, x, m), *a);
  if (b) {
    DKElement pushed = direct_image(compose_inclusion(n, x, m), *b);
    out = out ? *out + pushed : pushed;
  }
  return *out;
}

// ----------------------------------------------------------------- commutation

CommutationResult check_commutation(const SetMap& f, const SetMap& g, int weight_cap) {
  if (!f.is_total() || !f.is_injective()) throw std::invalid_argument("check_commutation: f must be injective and total");
  if (!g.is_total()) throw std::invalid_argument("check_commutation: g must be total");
  if (f.target() != g.source()) throw std::invalid_argument("check_commutation: f and g are not composable");
  std::set<int> image;
  for (int p = 0; p < f.source(); ++p) image.insert(g(f(p)));
  if (image.size() > 1) throw ClaimHypothesisError("check_commutation: image of g∘f has more than one point");
  CommutationResult res;
  const int S = f.source(), R = g.target();
  for (int a = 1; a < weight_cap; ++a)
    for (int b = 1; a + b <= weight_cap; ++b) {
      auto bs = dk_basis(S, a), br = dk_basis(R, b);
      for (std::size_t k = 0; k < bs->dim(); ++k) {
        std::vector<Rational> ek(bs->dim());
        ek[k] = Rational(1);
        DKElement u = direct_image(f, DKElement(bs, ek));
        for (std::size_t l = 0; l < br->dim(); ++l) {
          std::vector<Rational> el(br->dim());
          el[l] = Rational(1);
          DKElement v = inverse_image(g, DKElement(br, el));
          DKElement c = bracket(u, v);
          ++res.pairs_checked;
          if (!c.is_zero() && res.ok) {
            res.ok = false;
            std::ostringstream os;
            os << "[" << u.to_string() << ", " << v.to_string() << "] = " << c.to_string() << " for f = " << f.to_string()
               << ", g = " << g.to_string();
            res.witness = os.str();
          }
        }
      }
    }
  return res;
}

}  // namespace grtk::dk
