#pragma once

// Exact rational feasibility for {lambda >= 0 : G lambda = b}: phase one of
// the simplex method with Bland's rule, over arbitrary-precision rationals.
// This decides membership in the (not necessarily pointed) real cone spanned
// by finitely many integer vectors.

#include "fslog/integer.hpp"

#include <cstddef>
#include <vector>

namespace fslog {

namespace detail {

inline bool nonnegative_solution_exists(std::vector<Vector> const& columns, Vector const& b) {
  std::size_t const d = b.size();
  std::size_t const n = columns.size();
  if (d == 0) return true;
  if (n == 0) return is_zero(b);

  // Tableau: d rows, n structural + d artificial columns, then rhs.
  std::size_t const width = n + d + 1;
  std::vector<Rational> t(d * width, Rational(0));
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return t[i * width + j]; };
  std::vector<std::size_t> basis(d);
  for (std::size_t i = 0; i < d; ++i) {
    int sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) at(i, j) = Rational(columns[j][i] * sign);
    at(i, n + i) = 1;
    at(i, width - 1) = Rational(b[i] * sign);
    basis[i] = n + i;
  }

  // Minimise the sum of artificials; reduced costs of structural columns.
  std::vector<Rational> reduced(n + d, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < d; ++i) reduced[j] -= at(i, j);

  while (true) {
    std::size_t enter = n + d;
    for (std::size_t j = 0; j < n + d; ++j)
      if (reduced[j] < 0) {
        enter = j;
        break;
      }
    if (enter == n + d) break;

    std::size_t leave = d;
    Rational best;
    for (std::size_t i = 0; i < d; ++i) {
      if (at(i, enter) <= 0) continue;
      Rational ratio = at(i, width - 1) / at(i, enter);
      if (leave == d || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == d) break;  // unbounded; cannot happen for a bounded-below phase one

    Rational piv = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= piv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == leave || at(i, enter) == 0) continue;
      Rational f = at(i, enter);
      for (std::size_t j = 0; j < width; ++j) at(i, j) -= f * at(leave, j);
    }
    Rational f = reduced[enter];
    for (std::size_t j = 0; j < n + d; ++j) reduced[j] -= f * at(leave, j);
    basis[leave] = enter;
  }

  for (std::size_t i = 0; i < d; ++i)
    if (basis[i] >= n && at(i, width - 1) != 0) return false;
  return true;
}

}  // namespace detail

// x lies in the real cone spanned by `generators`.
inline bool cone_contains(std::vector<Vector> const& generators, Vector const& x) {
  return detail::nonnegative_solution_exists(generators, x);
}

// Indices of generators g with -g in the cone; they span its lineality space.
inline std::vector<std::size_t> lineality_generators(std::vector<Vector> const& generators) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (!is_zero(generators[i]) && cone_contains(generators, -generators[i])) out.push_back(i);
  return out;
}

}  // namespace fslog
