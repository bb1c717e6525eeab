#pragma once

// Finitely generated commutative monoids: presentations by generators and
// relations, and affine monoids given by generators inside a free lattice.

#include "fslog/cone_membership.hpp"
#include "fslog/error.hpp"
#include "fslog/integer.hpp"
#include "fslog/lattice.hpp"
#include "fslog/pointed_cone.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fslog {

struct Relation {
  Vector lhs;
  Vector rhs;
  friend bool operator==(Relation const&, Relation const&) = default;
};

// <x_1, ..., x_n | lhs_j = rhs_j>, each side a vector of nonnegative
// multiplicities.
class MonoidPresentation {
 public:
  MonoidPresentation() = default;
  MonoidPresentation(std::size_t num_generators, std::vector<Relation> relations)
      : num_generators_(num_generators), relations_(std::move(relations)) {
    for (auto const& r : relations_) {
      if (r.lhs.size() != num_generators_ || r.rhs.size() != num_generators_)
        throw Error(ErrorCode::DimensionMismatch, "relation length differs from generator count");
      for (auto const* side : {&r.lhs, &r.rhs})
        for (auto const& x : *side)
          if (x < 0) throw Error(ErrorCode::DimensionMismatch, "negative multiplicity in relation");
    }
  }

  static MonoidPresentation free(std::size_t n) { return MonoidPresentation(n, {}); }

  std::size_t num_generators() const { return num_generators_; }
  std::vector<Relation> const& relations() const { return relations_; }

  // num_generators x num_relations; column j is lhs_j - rhs_j.
  Matrix relation_matrix() const {
    Matrix m(num_generators_, relations_.size());
    for (std::size_t j = 0; j < relations_.size(); ++j)
      for (std::size_t i = 0; i < num_generators_; ++i)
        m(i, j) = relations_[j].lhs[i] - relations_[j].rhs[i];
    return m;
  }

  friend bool operator==(MonoidPresentation const&, MonoidPresentation const&) = default;

 private:
  std::size_t num_generators_ = 0;
  std::vector<Relation> relations_;
};

// The submonoid of Z^r generated by finitely many vectors. The generator list
// is canonical: zero vectors dropped, duplicates removed, sorted
// lexicographically. Derived data (groupification basis, sharpness, the
// triangulated cone, the Hilbert basis) is computed at most once and shared by
// copies.
class AffineMonoid {
 public:
  AffineMonoid() : cache_(std::make_shared<Cache>()) {}

  AffineMonoid(std::size_t ambient_rank, std::vector<Vector> generators)
      : ambient_rank_(ambient_rank), cache_(std::make_shared<Cache>()) {
    std::set<Vector> unique;
    for (auto& g : generators) {
      if (g.size() != ambient_rank_)
        throw Error(ErrorCode::DimensionMismatch,
                    "generator " + to_string(g) + " not in Z^" + std::to_string(ambient_rank_));
      if (!is_zero(g)) unique.insert(std::move(g));
    }
    generators_.assign(unique.begin(), unique.end());
    gp_ = LatticeBasis(generators_, ambient_rank_);
  }

  static AffineMonoid free(std::size_t n) {
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(unit_vector(n, i));
    return AffineMonoid(n, std::move(gens));
  }

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::vector<Vector> const& generators() const { return generators_; }
  bool is_trivial() const { return generators_.empty(); }

  // The subgroup generated by the monoid, with its canonical basis.
  LatticeBasis const& gp_lattice() const { return gp_; }
  std::size_t rank() const { return gp_.rank(); }

  std::vector<Vector> generator_coordinates() const {
    std::vector<Vector> out;
    out.reserve(generators_.size());
    for (auto const& g : generators_) out.push_back(*gp_.coordinates(g));
    return out;
  }

  bool is_sharp() const {
    std::call_once(cache_->sharp_once, [this] {
      cache_->sharp = lineality_generators(generators_).empty();
    });
    return cache_->sharp;
  }

  // The cone of the monoid in gp-lattice coordinates. Requires sharpness.
  PointedCone const& cone() const {
    if (!is_sharp()) throw Error(ErrorCode::NotSharp, "cone has nontrivial lineality");
    std::call_once(cache_->cone_once, [this] {
      cache_->cone = std::make_unique<PointedCone>(generator_coordinates(), rank());
    });
    return *cache_->cone;
  }

  std::vector<Vector> const& hilbert_basis() const {
    PointedCone const& c = cone();
    std::call_once(cache_->hilbert_once, [this, &c] {
      std::vector<Vector> out;
      for (auto const& h : c.hilbert_basis()) out.push_back(gp_.from_coordinates(h));
      std::sort(out.begin(), out.end());
      cache_->hilbert = std::move(out);
    });
    return cache_->hilbert;
  }

  friend bool operator==(AffineMonoid const& a, AffineMonoid const& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.generators_ == b.generators_;
  }

 private:
  struct Cache {
    std::once_flag sharp_once;
    bool sharp = false;
    std::once_flag cone_once;
    std::unique_ptr<PointedCone> cone;
    std::once_flag hilbert_once;
    std::vector<Vector> hilbert;
  };

  std::size_t ambient_rank_ = 0;
  std::vector<Vector> generators_;
  LatticeBasis gp_;
  std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------
// Groupification of presentations.

struct Groupification {
  FgAbelianGroup group;
  // free_rank x num_generators: Z^n -> M^gp -> M^gp / torsion.
  Matrix projection;
  // Column j of the projection: image of the j-th generator.
  std::vector<Vector> generator_images;
};

inline Groupification groupify(MonoidPresentation const& p) {
  Cokernel c = cokernel(p.relation_matrix());
  return Groupification{c.group, c.projection, c.projection.columns()};
}

// The image of the presented monoid in M^gp / torsion.
inline AffineMonoid torsion_free_image(MonoidPresentation const& p) {
  Groupification g = groupify(p);
  return AffineMonoid(g.group.free_rank, g.generator_images);
}

// ---------------------------------------------------------------------------
// Core operations on affine monoids.

inline bool is_sharp(AffineMonoid const& m) { return m.is_sharp(); }

inline std::vector<Vector> hilbert_basis(AffineMonoid const& m) { return m.hilbert_basis(); }

namespace detail {

// Searches for nonnegative multiplicities with sum_i n_i * gens[i] = x, all in
// coordinates of a pointed cone that contains every generator. Returns the
// multiplicities of the first decomposition found in a fixed search order.
class Decomposer {
 public:
  Decomposer(std::vector<Vector> const& gens, PointedCone const& cone)
      : gens_(gens), cone_(cone) {
    for (std::size_t i = 0; i < gens_.size(); ++i) order_.push_back(i);
    std::vector<Integer> deg;
    for (auto const& g : gens_) deg.push_back(cone_.degree(g));
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
  }

  std::optional<std::vector<Integer>> decompose(Vector const& x) {
    std::vector<Integer> mult(gens_.size(), Integer(0));
    if (!search(x, mult)) return std::nullopt;
    return mult;
  }

 private:
  bool search(Vector const& x, std::vector<Integer>& mult) {
    if (is_zero(x)) return true;
    if (cone_.degree(x) <= 0 || !cone_.contains(x)) return false;
    if (failed_.count(x)) return false;
    for (std::size_t i : order_) {
      Vector rest = x - gens_[i];
      if (!cone_.contains(rest)) continue;
      ++mult[i];
      if (search(rest, mult)) return true;
      --mult[i];
    }
    failed_.insert(x);
    return false;
  }

  std::vector<Vector> const& gens_;
  PointedCone const& cone_;
  std::vector<std::size_t> order_;
  std::set<Vector> failed_;
};

}  // namespace detail

// x is a nonnegative integer combination of the generators of m.
inline bool element_of(Vector const& x, AffineMonoid const& m) {
  if (x.size() != m.ambient_rank())
    throw Error(ErrorCode::DimensionMismatch, "element of wrong dimension");
  if (!m.is_sharp()) throw Error(ErrorCode::NotSharp, "membership requires a sharp monoid");
  auto c = m.gp_lattice().coordinates(x);
  if (!c) return false;
  auto gens = m.generator_coordinates();
  return detail::Decomposer(gens, m.cone()).decompose(*c).has_value();
}

// Multiplicities expressing x over m.generators(), if x is in m.
inline std::optional<std::vector<Integer>> decompose(Vector const& x, AffineMonoid const& m) {
  if (!m.is_sharp()) throw Error(ErrorCode::NotSharp, "decomposition requires a sharp monoid");
  auto c = m.gp_lattice().coordinates(x);
  if (!c) return std::nullopt;
  auto gens = m.generator_coordinates();
  return detail::Decomposer(gens, m.cone()).decompose(*c);
}

// The unique minimal generating set of a sharp monoid.
inline std::vector<Vector> irreducibles(AffineMonoid const& m) {
  if (!m.is_sharp()) throw Error(ErrorCode::NotSharp, "irreducibles require a sharp monoid");
  auto gens = m.generator_coordinates();
  std::vector<Vector> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Vector> others;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    if (!detail::Decomposer(others, m.cone()).decompose(gens[i])) out.push_back(m.generators()[i]);
  }
  return out;  // generators are already sorted
}

namespace detail {

// Quotient of the gp lattice of m (in its coordinates) by the lattice points of
// the lineality space: the free projection and a section of it.
struct UnitQuotient {
  Matrix projection;  // k' x k, row Hermite form
  Matrix section;     // k x k', projection * section = I
  Matrix units;       // k x u, basis of the unit lattice in coordinates
};

inline UnitQuotient unit_quotient(AffineMonoid const& m) {
  auto coords = m.generator_coordinates();
  std::vector<Vector> lineal;
  for (std::size_t i : lineality_generators(m.generators())) lineal.push_back(coords[i]);
  Cokernel c = cokernel(Matrix::from_columns(lineal, m.rank()));
  UnitQuotient q;
  q.projection = c.projection;
  if (c.projection.rows() > 0) {
    q.section = right_inverse(c.projection);
  } else {
    q.section = Matrix(m.rank(), 0);
  }
  q.units = integer_kernel(c.projection);
  return q;
}

}  // namespace detail

// The saturation of m inside its gp lattice. Sharp inputs yield their Hilbert
// basis; otherwise the units are split off, the sharp quotient is saturated and
// lifted back.
inline AffineMonoid saturate(AffineMonoid const& m) {
  if (m.is_trivial()) return m;
  if (m.is_sharp()) return AffineMonoid(m.ambient_rank(), m.hilbert_basis());

  detail::UnitQuotient q = detail::unit_quotient(m);
  std::vector<Vector> quotient_gens;
  for (auto const& c : m.generator_coordinates()) quotient_gens.push_back(q.projection * c);
  AffineMonoid sharp_quotient(q.projection.rows(), quotient_gens);

  std::vector<Vector> gens;
  for (auto const& h : sharp_quotient.hilbert_basis())
    gens.push_back(m.gp_lattice().from_coordinates(q.section * h));
  for (auto const& u : q.units.columns()) {
    Vector amb = m.gp_lattice().from_coordinates(u);
    gens.push_back(amb);
    gens.push_back(-amb);
  }
  return AffineMonoid(m.ambient_rank(), std::move(gens));
}

}  // namespace fslog
