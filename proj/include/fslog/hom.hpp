#pragma once

// Monoid homomorphisms recorded by their values on generators, sharpening,
// and isomorphism tests.

#include "fslog/cone_membership.hpp"
#include "fslog/error.hpp"
#include "fslog/lattice.hpp"
#include "fslog/monoid.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fslog {

namespace detail {

// Membership in a target monoid. Sharp targets are decided exactly; for a
// non-sharp target, membership in its saturation (cone ∩ gp lattice).
inline bool target_contains(AffineMonoid const& target, Vector const& y) {
  if (target.is_sharp()) return element_of(y, target);
  return target.gp_lattice().contains(y) && cone_contains(target.generators(), y);
}

}  // namespace detail

// A homomorphism from an affine monoid or a presented monoid to an affine
// monoid, given by the image of each source generator. Construction checks
// that the images respect every relation of the source and lie in the target.
class MonoidHom {
 public:
  using Source = std::variant<AffineMonoid, MonoidPresentation>;

  MonoidHom(Source source, AffineMonoid target, std::vector<Vector> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != num_source_generators())
      throw Error(ErrorCode::DimensionMismatch,
                  "expected " + std::to_string(num_source_generators()) + " images, got " +
                      std::to_string(images_.size()));
    for (auto const& y : images_)
      if (y.size() != target_.ambient_rank())
        throw Error(ErrorCode::DimensionMismatch, "image " + to_string(y) + " of wrong length");

    if (auto const* m = std::get_if<AffineMonoid>(&source_)) {
      auto map = LatticeMap::fit(m->generators(), images_, m->ambient_rank(),
                                 target_.ambient_rank());
      if (!map) throw Error(ErrorCode::RelationViolated, "images are not additive on the source");
      gp_map_ = std::move(map);
    } else {
      auto const& p = std::get<MonoidPresentation>(source_);
      for (auto const& r : p.relations())
        if (evaluate(r.lhs) != evaluate(r.rhs))
          throw Error(ErrorCode::RelationViolated, "relation not preserved");
    }
    for (auto const& y : images_)
      if (!detail::target_contains(target_, y))
        throw Error(ErrorCode::ImageEscapes, "image " + to_string(y) + " outside the target");
  }

  Source const& source() const { return source_; }
  bool has_monoid_source() const { return std::holds_alternative<AffineMonoid>(source_); }
  AffineMonoid const& source_monoid() const { return std::get<AffineMonoid>(source_); }
  AffineMonoid const& target() const { return target_; }
  std::vector<Vector> const& images() const { return images_; }

  std::size_t num_source_generators() const {
    if (auto const* m = std::get_if<AffineMonoid>(&source_)) return m->generators().size();
    return std::get<MonoidPresentation>(source_).num_generators();
  }

  // Image of an element of the source's groupification. For a presented
  // source, x is a vector of generator multiplicities.
  Vector apply(Vector const& x) const {
    if (gp_map_) {
      auto y = gp_map_->apply(x);
      if (!y) throw Error(ErrorCode::DimensionMismatch, to_string(x) + " not in the source lattice");
      return *y;
    }
    return evaluate(x);
  }

  // target_rank x source-gp-rank matrix of the groupified map, in the
  // canonical bases of both gp lattices.
  Matrix lattice_matrix() const {
    auto const& src = source_monoid();
    Matrix const& basis = src.gp_lattice().basis();
    Matrix out(target_.rank(), src.rank());
    for (std::size_t j = 0; j < src.rank(); ++j) {
      Vector y = apply(basis.column(j));
      Vector c = *target_.gp_lattice().coordinates(y);
      for (std::size_t i = 0; i < c.size(); ++i) out(i, j) = c[i];
    }
    return out;
  }

  friend bool operator==(MonoidHom const& a, MonoidHom const& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
  }

 private:
  Vector evaluate(Vector const& mult) const {
    if (mult.size() != images_.size())
      throw Error(ErrorCode::DimensionMismatch, "multiplicity vector of wrong length");
    Vector y = zero_vector(target_.ambient_rank());
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (mult[i] != 0) y += mult[i] * images_[i];
    return y;
  }

  Source source_;
  AffineMonoid target_;
  std::vector<Vector> images_;
  std::optional<LatticeMap> gp_map_;
};

inline MonoidHom identity_hom(AffineMonoid const& m) {
  return MonoidHom(m, m, m.generators());
}

// g ∘ f.
inline MonoidHom compose(MonoidHom const& g, MonoidHom const& f) {
  std::vector<Vector> images;
  for (auto const& y : f.images()) images.push_back(g.apply(y));
  return MonoidHom(f.source(), g.target(), std::move(images));
}

// Extends prescribed values on a set of elements spanning the gp lattice of
// `source` to a homomorphism into `target`. Throws RelationViolated if the
// values are not additive, ImageEscapes if a generator leaves the target.
inline MonoidHom hom_from_values(AffineMonoid const& source, std::vector<Vector> const& elements,
                                 std::vector<Vector> const& values, AffineMonoid const& target) {
  auto map = LatticeMap::fit(elements, values, source.ambient_rank(), target.ambient_rank());
  if (!map) throw Error(ErrorCode::RelationViolated, "prescribed values are not additive");
  std::vector<Vector> images;
  for (auto const& g : source.generators()) {
    auto y = map->apply(g);
    if (!y) throw Error(ErrorCode::RelationViolated, "values do not span the source lattice");
    images.push_back(std::move(*y));
  }
  return MonoidHom(source, target, std::move(images));
}

// N^n -> target with e_i |-> images[i]. Generators of an AffineMonoid are
// stored sorted, so the free monoid's generator list runs e_{n-1}, ..., e_0.
inline MonoidHom free_hom(std::size_t n, std::vector<Vector> const& images, AffineMonoid const& target) {
  if (images.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n) + " images");
  AffineMonoid src = AffineMonoid::free(n);
  std::vector<Vector> out;
  for (auto const& g : src.generators())
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] == 1) out.push_back(images[i]);
  return MonoidHom(std::move(src), target, std::move(out));
}

struct Sharpening {
  AffineMonoid monoid;
  MonoidHom projection;
};

// Quotient of a saturated monoid by its unit group.
inline Sharpening sharpen(AffineMonoid const& m) {
  if (m.is_sharp()) return {m, identity_hom(m)};
  detail::UnitQuotient q = detail::unit_quotient(m);
  std::vector<Vector> images;
  for (auto const& c : m.generator_coordinates()) images.push_back(q.projection * c);
  AffineMonoid quotient(q.projection.rows(), images);
  MonoidHom proj(m, quotient, std::move(images));
  return {std::move(quotient), std::move(proj)};
}

// h is bijective. The source must be an affine monoid; the target saturated
// when it is not sharp.
inline bool is_isomorphism(MonoidHom const& h) {
  if (!h.has_monoid_source()) throw Error(ErrorCode::DimensionMismatch, "source must be an affine monoid");
  AffineMonoid const& src = h.source_monoid();
  AffineMonoid const& tgt = h.target();
  if (src.rank() != tgt.rank()) return false;
  Integer det = determinant(h.lattice_matrix());
  if (det != 1 && det != -1) return false;

  // Surjectivity: the images of the source generators generate the target.
  if (tgt.is_sharp()) {
    AffineMonoid image(tgt.ambient_rank(), h.images());
    for (auto const& t : tgt.generators())
      if (!element_of(t, image)) return false;
    return true;
  }
  for (auto const& t : tgt.generators())
    if (!cone_contains(h.images(), t)) return false;
  return true;
}

// Search for an isomorphism between sharp monoids. An isomorphism permutes
// irreducibles, so it is fixed by the images of a rational basis among them
// and checked on the rest.
inline std::optional<MonoidHom> iso_check(AffineMonoid const& a, AffineMonoid const& b,
                                          std::size_t max_assignments = 10000000) {
  if (!a.is_sharp() || !b.is_sharp()) throw Error(ErrorCode::NotSharp, "iso_check needs sharp monoids");
  if (a.rank() != b.rank()) return std::nullopt;
  std::size_t const k = a.rank();
  std::vector<Vector> ha, hb;
  for (auto const& h : irreducibles(a)) ha.push_back(*a.gp_lattice().coordinates(h));
  for (auto const& h : irreducibles(b)) hb.push_back(*b.gp_lattice().coordinates(h));
  if (ha.size() != hb.size()) return std::nullopt;

  if (k == 0) return MonoidHom(a, b, {});

  // Pivot set: first k linearly independent Hilbert basis elements of a.
  std::vector<std::size_t> pivots;
  std::vector<Vector> chosen;
  for (std::size_t i = 0; i < ha.size() && pivots.size() < k; ++i) {
    chosen.push_back(ha[i]);
    if (rank(Matrix::from_columns(chosen, k)) == chosen.size()) {
      pivots.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  Matrix x = Matrix::from_columns(chosen, k);
  Integer det_x = determinant(x);
  Matrix adj_x = adjugate(x);

  double count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= static_cast<double>(hb.size() - i);
  if (count > static_cast<double>(max_assignments))
    throw Error(ErrorCode::ScaleExceeded, "too many Hilbert basis bijections to search");

  std::set<Vector> hb_set(hb.begin(), hb.end());
  std::vector<std::size_t> assign;
  std::vector<bool> taken(hb.size(), false);
  std::optional<Matrix> found;

  auto try_full = [&]() -> bool {
    std::vector<Vector> ys;
    for (std::size_t t : assign) ys.push_back(hb[t]);
    Matrix num = Matrix::from_columns(ys, k) * adj_x;  // det_x * F
    for (auto const& e : num.entries())
      if (e % det_x != 0) return false;
    Matrix f(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) f(i, j) = num(i, j) / det_x;
    std::set<Vector> images;
    for (auto const& h : ha) {
      Vector y = f * h;
      if (!hb_set.count(y) || !images.insert(y).second) return false;
    }
    found = std::move(f);
    return true;
  };

  auto recurse = [&](auto&& self) -> bool {
    if (assign.size() == k) return try_full();
    for (std::size_t t = 0; t < hb.size(); ++t) {
      if (taken[t]) continue;
      taken[t] = true;
      assign.push_back(t);
      if (self(self)) return true;
      assign.pop_back();
      taken[t] = false;
    }
    return false;
  };
  if (!recurse(recurse)) return std::nullopt;

  std::vector<Vector> images;
  for (auto const& g : a.generators())
    images.push_back(b.gp_lattice().from_coordinates(*found * *a.gp_lattice().coordinates(g)));
  return MonoidHom(a, b, std::move(images));
}

}  // namespace fslog
