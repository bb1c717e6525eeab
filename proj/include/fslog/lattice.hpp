#pragma once

// Exact integer linear algebra: Smith and Hermite normal forms, cokernels,
// sublattice bases and coordinates, and finitely generated abelian groups.

#include "fslog/integer.hpp"
#include "fslog/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fslog {

struct SmithDecomposition {
  Matrix U;  // unimodular, rows x rows
  Matrix D;  // diagonal, nonnegative
  Matrix V;  // unimodular, cols x cols
  std::vector<Integer> invariant_factors;  // nonzero diagonal of D, d1 | d2 | ...
};

// U * A * V = D.
inline SmithDecomposition smith_normal_form(Matrix const& a) {
  std::size_t const m = a.rows(), n = a.cols();
  Matrix d = a, u = Matrix::identity(m), v = Matrix::identity(n);

  auto swap_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
    d.swap_rows(t, i);
    u.swap_rows(t, i);
    d.swap_cols(t, j);
    v.swap_cols(t, j);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    swap_pivot(t, best->first, best->second);

    while (true) {
      bool clear = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clear = false;
      }
      if (!clear) {
        // A remainder smaller than the pivot is left in row or column t.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < abs(d(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < abs(d(bi, bj))) bi = t, bj = j;
        swap_pivot(t, bi, bj);
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      d.add_row_multiple(t, *bad_row, 1);
      u.add_row_multiple(t, *bad_row, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }

  SmithDecomposition out{std::move(u), std::move(d), std::move(v), {}};
  for (std::size_t t = 0; t < std::min(m, n); ++t)
    if (out.D(t, t) != 0) out.invariant_factors.push_back(out.D(t, t));
  return out;
}

// Column-style Hermite normal form: A * T = H with T unimodular. The first
// `rank` columns of H are in echelon form with positive pivots at
// `pivot_rows`, entries left of a pivot reduced into [0, pivot); the
// remaining columns are zero, so the trailing columns of T span ker(A).
struct ColumnHermite {
  Matrix H;
  Matrix T;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

inline ColumnHermite column_hermite(Matrix const& a) {
  std::size_t const m = a.rows(), n = a.cols();
  ColumnHermite out{a, Matrix::identity(n), 0, {}};
  Matrix& h = out.H;
  Matrix& t = out.T;
  std::size_t k = 0;

  auto combine = [](Matrix& x, std::size_t ck, std::size_t cj, Integer const& s,
                    Integer const& tt, Integer const& p, Integer const& q) {
    // [col_k, col_j] <- [s*col_k + tt*col_j, -q*col_k + p*col_j], det = 1.
    for (std::size_t r = 0; r < x.rows(); ++r) {
      Integer xk = x(r, ck), xj = x(r, cj);
      x(r, ck) = s * xk + tt * xj;
      x(r, cj) = p * xj - q * xk;
    }
  };

  for (std::size_t i = 0; i < m && k < n; ++i) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, k) == 0) {
        h.swap_cols(k, j);
        t.swap_cols(k, j);
        continue;
      }
      ExtendedGcd eg = extended_gcd(h(i, k), h(i, j));
      Integer p = h(i, k) / eg.g, q = h(i, j) / eg.g;
      combine(h, k, j, eg.s, eg.t, p, q);
      combine(t, k, j, eg.s, eg.t, p, q);
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) {
      h.negate_col(k);
      t.negate_col(k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Integer q = floor_div(h(i, j), h(i, k));
      h.add_col_multiple(j, k, -q);
      t.add_col_multiple(j, k, -q);
    }
    out.pivot_rows.push_back(i);
    ++k;
  }
  out.rank = k;
  return out;
}

// Integer kernel basis of A as the columns of the returned matrix.
inline Matrix integer_kernel(Matrix const& a) {
  ColumnHermite ch = column_hermite(a);
  return ch.T.column_range(ch.rank, a.cols());
}

// Left-multiplies a full-row-rank matrix by the unique unimodular matrix
// that brings it to row Hermite normal form.
inline Matrix row_hermite(Matrix const& p) {
  ColumnHermite ch = column_hermite(p.transpose());
  return ch.H.column_range(0, ch.rank).transpose();
}

// Canonical basis of the subgroup of Z^dim generated by a finite set of
// vectors, with the data needed to take coordinates and to pull maps back to
// the generators.
class LatticeBasis {
 public:
  LatticeBasis() = default;

  LatticeBasis(std::vector<Vector> const& generators, std::size_t dim) : dim_(dim) {
    Matrix g = Matrix::from_columns(generators, dim);
    ColumnHermite ch = column_hermite(g);
    basis_ = ch.H.column_range(0, ch.rank);
    from_generators_ = ch.T.column_range(0, ch.rank);
    kernel_ = ch.T.column_range(ch.rank, generators.size());
    pivot_rows_ = std::move(ch.pivot_rows);
  }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return basis_.cols(); }

  // dim x rank; columns are the canonical (Hermite) basis.
  Matrix const& basis() const { return basis_; }
  // generators * from_generators() = basis().
  Matrix const& from_generators() const { return from_generators_; }
  // Columns span the integer relations among the generators.
  Matrix const& relations() const { return kernel_; }

  // Coordinates of x in the canonical basis, or nullopt if x is not in the
  // lattice.
  std::optional<Vector> coordinates(Vector const& x) const {
    if (x.size() != dim_) return std::nullopt;
    Vector rest = x;
    Vector c = zero_vector(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      std::size_t p = pivot_rows_[j];
      for (std::size_t i = 0; i < p; ++i)
        if (rest[i] != 0) return std::nullopt;
      if (rest[p] % basis_(p, j) != 0) return std::nullopt;
      c[j] = rest[p] / basis_(p, j);
      for (std::size_t i = p; i < dim_; ++i) rest[i] -= c[j] * basis_(i, j);
    }
    if (!is_zero(rest)) return std::nullopt;
    return c;
  }

  bool contains(Vector const& x) const { return coordinates(x).has_value(); }

  Vector from_coordinates(Vector const& c) const { return basis_ * c; }

  friend bool operator==(LatticeBasis const& a, LatticeBasis const& b) {
    return a.dim_ == b.dim_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t dim_ = 0;
  Matrix basis_;
  Matrix from_generators_;
  Matrix kernel_;
  std::vector<std::size_t> pivot_rows_;
};

// Hermite basis (as columns) of the lattice generated by `vectors` in Z^dim.
inline Matrix lattice_generated_by(std::vector<Vector> const& vectors, std::size_t dim) {
  return LatticeBasis(vectors, dim).basis();
}

// Z^free_rank (+) Z/t1 (+) ... (+) Z/tk with t1 | t2 | ... | tk, all ti >= 2.
struct FgAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion_factors;

  bool is_free() const { return torsion_factors.empty(); }
  friend bool operator==(FgAbelianGroup const&, FgAbelianGroup const&) = default;
};

struct Cokernel {
  FgAbelianGroup group;
  // free_rank x ambient; sends x to its class in the group modulo torsion.
  // Row Hermite normal form, hence independent of the reduction path.
  Matrix projection;
};

// Z^rows / (column space of A).
inline Cokernel cokernel(Matrix const& a) {
  std::size_t const m = a.rows();
  SmithDecomposition snf = smith_normal_form(a);
  Cokernel out;
  std::size_t r = snf.invariant_factors.size();
  for (auto const& f : snf.invariant_factors)
    if (f > 1) out.group.torsion_factors.push_back(f);
  out.group.free_rank = m - r;
  if (m - r == 0) {
    out.projection = Matrix(0, m);
  } else {
    out.projection = row_hermite(snf.U.row_range(r, m));
  }
  return out;
}

// For surjective P : Z^m -> Z^f, an integer S with P * S = I.
inline Matrix right_inverse(Matrix const& p) {
  ColumnHermite ch = column_hermite(p);
  if (ch.rank != p.rows()) throw std::invalid_argument("right_inverse: map not surjective");
  for (std::size_t i = 0; i < ch.rank; ++i)
    if (ch.H(i, i) != 1) throw std::invalid_argument("right_inverse: map not surjective");
  // H is then the identity: every entry left of a unit pivot reduces to zero.
  return ch.T.column_range(0, ch.rank);
}

// A group homomorphism defined on the lattice spanned by a set of source
// vectors, determined by prescribed images.
class LatticeMap {
 public:
  LatticeMap(LatticeBasis domain, Matrix on_basis)
      : domain_(std::move(domain)), on_basis_(std::move(on_basis)) {}

  // nullopt if the prescription is not additive (violates an integer
  // relation among the sources).
  static std::optional<LatticeMap> fit(std::vector<Vector> const& sources,
                                       std::vector<Vector> const& images,
                                       std::size_t source_dim, std::size_t target_dim) {
    LatticeBasis lb(sources, source_dim);
    Matrix y = Matrix::from_columns(images, target_dim);
    if (!(y * lb.relations()).is_zero()) return std::nullopt;
    return LatticeMap(lb, y * lb.from_generators());
  }

  LatticeBasis const& domain() const { return domain_; }
  // target_dim x domain().rank()
  Matrix const& on_basis() const { return on_basis_; }

  std::optional<Vector> apply(Vector const& x) const {
    auto c = domain_.coordinates(x);
    if (!c) return std::nullopt;
    return on_basis_ * *c;
  }

 private:
  LatticeBasis domain_;
  Matrix on_basis_;
};

}  // namespace fslog
