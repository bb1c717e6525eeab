#pragma once

// Brute-force verifiers for desk-scale inputs. These deliberately share no
// code path with the Hilbert basis machinery: cone membership is decided by
// conic Carathéodory over linearly independent generator subsets, lattice
// membership by a row-echelon reduction, and completeness by enumerating
// lattice points in a box. Machine integers only; callers keep inputs small.

#include "fslog/integer.hpp"
#include "fslog/monoid.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fslog::oracle {

using Point = std::vector<long long>;

inline Point to_point(Vector const& v) {
  Point p;
  p.reserve(v.size());
  for (auto const& x : v) p.push_back(static_cast<long long>(x));
  return p;
}

inline bool fits_desk_scale(AffineMonoid const& m, std::size_t max_rank = 3, long long max_coord = 8) {
  if (m.ambient_rank() > max_rank || m.generators().size() > 10) return false;
  for (auto const& g : m.generators())
    for (auto const& x : g)
      if (abs(x) > max_coord) return false;
  return true;
}

// Membership in the group and in the real cone generated by a finite set.
class BruteCone {
 public:
  explicit BruteCone(std::vector<Point> gens) : gens_(std::move(gens)) {
    dim_ = gens_.empty() ? 0 : gens_[0].size();
    build_echelon();
    build_simplices();
  }

  void set_dimension(std::size_t d) { dim_ = d; }

  bool in_lattice(Point x) const {
    for (auto const& [col, row] : echelon_) {
      if (x[col] % row[col] != 0) return false;
      long long q = x[col] / row[col];
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= q * row[i];
    }
    for (long long v : x)
      if (v != 0) return false;
    return true;
  }

  bool in_cone(Point const& x) const {
    bool zero = true;
    for (long long v : x) zero = zero && v == 0;
    if (zero) return true;
    for (auto const& s : simplices_) {
      std::size_t k = s.members.size();
      std::vector<__int128> num(k, 0);
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t t = 0; t < k; ++t) num[j] += s.adj[j][t] * x[s.rows[t]];
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j)
        if ((num[j] < 0 && s.det > 0) || (num[j] > 0 && s.det < 0)) ok = false;
      if (!ok) continue;
      for (std::size_t i = 0; i < x.size() && ok; ++i) {
        __int128 lhs = 0;
        for (std::size_t j = 0; j < k; ++j) lhs += static_cast<__int128>(gens_[s.members[j]][i]) * num[j];
        if (lhs != static_cast<__int128>(x[i]) * s.det) ok = false;
      }
      if (ok) return true;
    }
    return false;
  }

  bool in_monoid_saturation(Point const& x) const { return in_lattice(x) && in_cone(x); }

 private:
  struct Simplex {
    std::vector<std::size_t> members;
    std::vector<std::size_t> rows;
    std::vector<std::vector<__int128>> adj;
    __int128 det;
  };

  static __int128 det_of(std::vector<std::vector<__int128>> m) {
    std::size_t n = m.size();
    __int128 det = 1;
    // Integer elimination by Euclid on rows keeps everything exact.
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t r = c + 1; r < n; ++r) {
        while (m[r][c] != 0) {
          __int128 q = m[c][c] / m[r][c];
          for (std::size_t j = c; j < n; ++j) m[c][j] -= q * m[r][j];
          std::swap(m[c], m[r]);
          det = -det;
        }
      }
      if (m[c][c] == 0) return 0;
      det *= m[c][c];
    }
    return det;
  }

  void build_echelon() {
    std::vector<Point> rows = gens_;
    std::size_t top = 0;
    for (std::size_t col = 0; col < dim_ && top < rows.size(); ++col) {
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        while (rows[r][col] != 0) {
          long long q = rows[top][col] / rows[r][col];
          for (std::size_t j = 0; j < dim_; ++j) rows[top][j] -= q * rows[r][j];
          std::swap(rows[top], rows[r]);
        }
      }
      if (rows[top][col] != 0) {
        echelon_.emplace_back(col, rows[top]);
        ++top;
      }
    }
  }

  void build_simplices() {
    std::size_t n = gens_.size();
    if (n > 16) return;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) members.push_back(i);
      std::size_t k = members.size();
      if (k > dim_) continue;
      // Find k rows with a nonsingular k x k minor.
      std::vector<std::size_t> rows(k);
      for (std::size_t i = 0; i < k; ++i) rows[i] = i;
      while (true) {
        std::vector<std::vector<__int128>> sub(k, std::vector<__int128>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = gens_[members[j]][rows[i]];
        __int128 det = det_of(sub);
        if (det != 0) {
          Simplex s{members, rows, std::vector<std::vector<__int128>>(k, std::vector<__int128>(k)), det};
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
              if (k == 1) {
                s.adj[0][0] = 1;
                continue;
              }
              std::vector<std::vector<__int128>> minor;
              for (std::size_t r = 0; r < k; ++r) {
                if (r == j) continue;
                std::vector<__int128> row;
                for (std::size_t c = 0; c < k; ++c)
                  if (c != i) row.push_back(sub[r][c]);
                minor.push_back(row);
              }
              __int128 cof = det_of(minor);
              s.adj[i][j] = ((i + j) % 2) ? -cof : cof;
            }
          simplices_.push_back(std::move(s));
          break;
        }
        std::size_t i = k;
        while (i > 0 && rows[i - 1] == dim_ - k + i - 1) --i;
        if (i == 0) break;
        ++rows[i - 1];
        for (std::size_t j = i; j < k; ++j) rows[j] = rows[j - 1] + 1;
      }
    }
  }

  std::vector<Point> gens_;
  std::size_t dim_ = 0;
  std::vector<std::pair<std::size_t, Point>> echelon_;
  std::vector<Simplex> simplices_;
};

struct HilbertReport {
  bool ok = true;
  std::size_t lattice_points = 0;
  std::string message;
};

// Checks that `basis` is the Hilbert basis of the saturation of m, by
// enumerating every point of cone(m) ∩ gp(m) with coordinates in [-box, box]:
// each must be a nonnegative combination of the basis, every basis element
// must be such a point, and none may split as a sum of two nonzero points.
inline HilbertReport verify_hilbert_basis(AffineMonoid const& m, std::vector<Vector> const& basis,
                                          long long box) {
  HilbertReport rep;
  std::size_t r = m.ambient_rank();
  std::vector<Point> gens;
  for (auto const& g : m.generators()) gens.push_back(to_point(g));
  BruteCone cone(gens);
  cone.set_dimension(r);
  std::vector<Point> hb;
  for (auto const& h : basis) hb.push_back(to_point(h));

  auto fail = [&](std::string msg) {
    rep.ok = false;
    if (rep.message.empty()) rep.message = std::move(msg);
  };

  std::vector<Point> points;
  if (r > 0) {
    Point x(r, -box);
    while (true) {
      if (cone.in_monoid_saturation(x)) points.push_back(x);
      std::size_t pos = 0;
      while (pos < r) {
        if (x[pos] < box) {
          ++x[pos];
          break;
        }
        x[pos] = -box;
        ++pos;
      }
      if (pos == r) break;
    }
  } else {
    points.push_back(Point{});
  }
  rep.lattice_points = points.size();

  std::map<Point, bool> memo;
  auto decomposable = [&](auto&& self, Point const& x) -> bool {
    bool zero = true;
    for (long long v : x) zero = zero && v == 0;
    if (zero) return true;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    memo[x] = false;
    bool ok = false;
    for (auto const& h : hb) {
      Point rest(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) rest[i] = x[i] - h[i];
      if (!cone.in_monoid_saturation(rest)) continue;
      if (self(self, rest)) {
        ok = true;
        break;
      }
    }
    memo[x] = ok;
    return ok;
  };

  for (auto const& x : points)
    if (!decomposable(decomposable, x)) {
      Vector v;
      for (long long c : x) v.emplace_back(c);
      fail("point " + to_string(v) + " is not generated by the basis");
      break;
    }

  std::set<Point> point_set(points.begin(), points.end());
  for (auto const& h : hb) {
    bool zero = true;
    for (long long v : h) zero = zero && v == 0;
    Vector hv;
    for (long long c : h) hv.emplace_back(c);
    if (zero) {
      fail("zero vector in basis");
      continue;
    }
    if (!point_set.count(h)) {
      fail("basis element " + to_string(hv) + " not among enumerated lattice points");
      continue;
    }
    for (auto const& y : points) {
      if (y == h) continue;
      bool yzero = true;
      for (long long v : y) yzero = yzero && v == 0;
      if (yzero) continue;
      Point rest(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) rest[i] = h[i] - y[i];
      if (cone.in_monoid_saturation(rest)) {
        fail("basis element " + to_string(hv) + " is reducible");
        break;
      }
    }
  }
  return rep;
}

}  // namespace fslog::oracle
