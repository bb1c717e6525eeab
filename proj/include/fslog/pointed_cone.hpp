#pragma once

// Full-dimensional pointed rational cones in Z^k: a placing triangulation by
// the generators, the support hyperplanes it exposes, a positive grading, and
// the Hilbert basis of cone ∩ Z^k via fundamental parallelepipeds of the
// simplicial pieces followed by reduction.

#include "fslog/error.hpp"
#include "fslog/integer.hpp"
#include "fslog/lattice.hpp"
#include "fslog/matrix.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fslog {

// Work bounds for the lattice-point computations. Exceeding any of them raises
// ScaleExceeded instead of running unbounded.
struct Limits {
  std::size_t max_rank = 12;
  std::size_t max_generators = 64;
  std::size_t max_simplices = 200000;
  std::size_t max_candidates = 2000000;
};

inline Limits const& default_limits() {
  static Limits const limits{};
  return limits;
}

namespace detail {

// Normal of the hyperplane spanned by k-1 vectors in Z^k (generalised cross
// product): normal . x = det[x | vectors].
inline Vector hyperplane_normal(std::vector<Vector> const& vectors, std::size_t k) {
  Vector n(k);
  for (std::size_t i = 0; i < k; ++i) {
    Matrix minor(k - 1, k - 1);
    for (std::size_t r = 0, mr = 0; r < k; ++r) {
      if (r == i) continue;
      for (std::size_t c = 0; c + 1 < k; ++c) minor(mr, c) = vectors[c][r];
      ++mr;
    }
    n[i] = determinant(std::move(minor));
    if (i % 2) n[i] = -n[i];
  }
  return n;
}

}  // namespace detail

class PointedCone {
 public:
  // `generators` are nonzero, pairwise distinct, span R^k, and the cone they
  // span is pointed. The caller is responsible for all four.
  PointedCone(std::vector<Vector> generators, std::size_t k, Limits const& limits = default_limits())
      : k_(k), generators_(std::move(generators)) {
    if (k_ > limits.max_rank || generators_.size() > limits.max_generators)
      throw Error(ErrorCode::ScaleExceeded,
                  "cone of rank " + std::to_string(k_) + " with " +
                      std::to_string(generators_.size()) + " generators");
    if (k_ == 0) return;
    triangulate(limits);
    collect_facets();
  }

  std::size_t dimension() const { return k_; }
  std::vector<Vector> const& generators() const { return generators_; }
  // Each simplex lists k generator indices, sorted.
  std::vector<std::vector<std::size_t>> const& simplices() const { return simplices_; }
  // Primitive inward normals of the facets, sorted.
  std::vector<Vector> const& facets() const { return facets_; }
  // Strictly positive on every nonzero point of the cone.
  Vector const& grading() const { return grading_; }

  bool contains(Vector const& x) const {
    for (auto const& f : facets_)
      if (dot(f, x) < 0) return false;
    return true;
  }

  Integer degree(Vector const& x) const { return dot(grading_, x); }

  // Hilbert basis of cone ∩ Z^k, sorted lexicographically.
  std::vector<Vector> hilbert_basis(Limits const& limits = default_limits()) const {
    if (k_ == 0) return {};
    std::set<Vector> candidates(generators_.begin(), generators_.end());
    std::size_t budget = 0;
    for (auto const& s : simplices_) {
      Matrix b(k_, k_);
      for (std::size_t j = 0; j < k_; ++j)
        for (std::size_t i = 0; i < k_; ++i) b(i, j) = generators_[s[j]][i];
      Integer det = determinant(b);
      Integer vol = abs(det);
      if (vol == 1) continue;
      budget += static_cast<std::size_t>(vol);
      if (budget > limits.max_candidates)
        throw Error(ErrorCode::ScaleExceeded, "fundamental parallelepipeds too large");
      enumerate_parallelepiped(b, det, candidates);
    }

    std::vector<std::pair<Integer, Vector>> ordered;
    ordered.reserve(candidates.size());
    for (auto const& c : candidates) ordered.emplace_back(degree(c), c);
    std::sort(ordered.begin(), ordered.end());

    // A candidate is reducible iff it dominates (in cone order) an irreducible
    // of strictly smaller degree.
    std::vector<std::pair<Integer, Vector>> basis;
    for (auto const& [deg, x] : ordered) {
      bool reducible = false;
      for (auto const& [hdeg, h] : basis) {
        if (hdeg >= deg) break;
        if (contains(x - h)) {
          reducible = true;
          break;
        }
      }
      if (!reducible) basis.emplace_back(deg, x);
    }
    std::vector<Vector> out;
    out.reserve(basis.size());
    for (auto& [deg, x] : basis) out.push_back(std::move(x));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Simplex {
    std::vector<std::size_t> vertices;  // sorted generator indices
    std::vector<Vector> normals;        // normals[t]: facet opposite vertices[t], inward
  };

  Simplex make_simplex(std::vector<std::size_t> vertices) const {
    std::sort(vertices.begin(), vertices.end());
    Simplex s{vertices, {}};
    for (std::size_t t = 0; t < k_; ++t) {
      std::vector<Vector> rest;
      for (std::size_t u = 0; u < k_; ++u)
        if (u != t) rest.push_back(generators_[vertices[u]]);
      Vector n = primitive(detail::hyperplane_normal(rest, k_));
      if (dot(n, generators_[vertices[t]]) < 0) n = -n;
      s.normals.push_back(std::move(n));
    }
    return s;
  }

  static std::vector<std::size_t> facet_key(Simplex const& s, std::size_t t) {
    std::vector<std::size_t> key;
    for (std::size_t u = 0; u < s.vertices.size(); ++u)
      if (u != t) key.push_back(s.vertices[u]);
    return key;
  }

  void add_simplex(Simplex s) {
    for (std::size_t t = 0; t < k_; ++t) ++facet_count_[facet_key(s, t)];
    simplices_.push_back(s.vertices);
    pieces_.push_back(std::move(s));
  }

  void triangulate(Limits const& limits) {
    std::vector<std::size_t> initial;
    std::vector<Vector> chosen;
    for (std::size_t i = 0; i < generators_.size() && initial.size() < k_; ++i) {
      chosen.push_back(generators_[i]);
      if (rank(Matrix::from_columns(chosen, k_)) == chosen.size()) {
        initial.push_back(i);
      } else {
        chosen.pop_back();
      }
    }
    add_simplex(make_simplex(initial));
    std::set<std::size_t> used(initial.begin(), initial.end());

    for (std::size_t g = 0; g < generators_.size(); ++g) {
      if (used.count(g)) continue;
      Vector const& x = generators_[g];
      std::vector<std::vector<std::size_t>> visible;
      for (auto const& s : pieces_)
        for (std::size_t t = 0; t < k_; ++t) {
          if (dot(s.normals[t], x) >= 0) continue;
          auto key = facet_key(s, t);
          if (facet_count_[key] == 1) visible.push_back(std::move(key));
        }
      for (auto& key : visible) {
        key.push_back(g);
        add_simplex(make_simplex(std::move(key)));
      }
      if (pieces_.size() > limits.max_simplices)
        throw Error(ErrorCode::ScaleExceeded, "triangulation too large");
    }
  }

  void collect_facets() {
    std::set<Vector> unique;
    for (auto const& s : pieces_)
      for (std::size_t t = 0; t < k_; ++t)
        if (facet_count_[facet_key(s, t)] == 1) unique.insert(s.normals[t]);
    facets_.assign(unique.begin(), unique.end());
    grading_ = zero_vector(k_);
    for (auto const& f : facets_) grading_ += f;
  }

  // Adds the nonzero lattice points of {sum l_j b_j : 0 <= l_j < 1}.
  void enumerate_parallelepiped(Matrix const& b, Integer const& det,
                                std::set<Vector>& out) const {
    SmithDecomposition snf = smith_normal_form(b);
    Matrix u_inv = adjugate(snf.U);
    Integer u_det = determinant(snf.U);
    if (u_det == -1) {
      for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = 0; j < k_; ++j) u_inv(i, j) = -u_inv(i, j);
    }
    Matrix adj = adjugate(b);

    std::vector<Integer> radix(k_);
    for (std::size_t i = 0; i < k_; ++i) radix[i] = snf.D(i, i);
    Vector digits = zero_vector(k_);
    while (true) {
      Vector z = u_inv * digits;
      Vector lambda = adj * z;  // det * coefficients of z in the basis b
      Vector x = z;
      for (std::size_t j = 0; j < k_; ++j) {
        Integer f = floor_div(lambda[j], det);
        if (f != 0)
          for (std::size_t i = 0; i < k_; ++i) x[i] -= f * b(i, j);
      }
      if (!is_zero(x)) out.insert(std::move(x));

      std::size_t pos = 0;
      while (pos < k_) {
        ++digits[pos];
        if (digits[pos] < radix[pos]) break;
        digits[pos] = 0;
        ++pos;
      }
      if (pos == k_) break;
    }
  }

  std::size_t k_;
  std::vector<Vector> generators_;
  std::vector<Simplex> pieces_;
  std::vector<std::vector<std::size_t>> simplices_;
  std::map<std::vector<std::size_t>, int> facet_count_;
  std::vector<Vector> facets_;
  Vector grading_;
};

}  // namespace fslog
