#include "fslog/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace fslog;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

bool is_diagonal(Matrix const& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

// gcd of all r x r minors; equals the product of the invariant factors.
Integer gcd_of_minors(Matrix const& a, std::size_t r) {
  if (r == 0) return 1;
  Integer g = 0;
  std::vector<std::size_t> rows, cols;
  auto pick = [](std::size_t n, std::size_t r, auto&& visit) {
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    while (true) {
      visit(idx);
      std::size_t i = r;
      while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
      if (i == 0) return;
      ++idx[i - 1];
      for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  };
  pick(a.rows(), r, [&](std::vector<std::size_t> const& ri) {
    pick(a.cols(), r, [&](std::vector<std::size_t> const& ci) {
      Matrix sub(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub(i, j) = a(ri[i], ci[j]);
      g = gcd(g, determinant(sub));
    });
  });
  return g;
}

// Order of Z^m / A Z^m for square nonsingular A by breadth-first search over
// cosets; x ~ y iff adj(A)(x - y) ≡ 0 mod det(A).
std::size_t coset_count_bfs(Matrix const& a) {
  std::size_t m = a.rows();
  Integer det = determinant(a);
  Matrix adj = adjugate(a);
  auto same = [&](Vector const& x, Vector const& y) {
    for (auto const& e : adj * (x - y))
      if (e % det != 0) return false;
    return true;
  };
  std::vector<Vector> reps{zero_vector(m)};
  std::vector<Vector> frontier = reps;
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (auto const& x : frontier)
      for (std::size_t i = 0; i < m; ++i) {
        Vector y = x + unit_vector(m, i);
        bool seen = false;
        for (auto const& r : reps)
          if (same(r, y)) {
            seen = true;
            break;
          }
        if (!seen) {
          reps.push_back(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return reps.size();
}

}  // namespace

TEST_CASE("smith normal form on named matrices", "[lattice][snf]") {
  SECTION("[[2,-2]]") {
    Matrix a{{2, -2}};
    auto s = smith_normal_form(a);
    CHECK(s.invariant_factors == std::vector<Integer>{2});
    CHECK(s.U * a * s.V == s.D);
  }
  SECTION("identity") {
    auto s = smith_normal_form(Matrix::identity(3));
    CHECK(s.invariant_factors == std::vector<Integer>{1, 1, 1});
  }
  SECTION("[[1,1,-2]]") {
    Matrix a{{1, 1, -2}};
    auto s = smith_normal_form(a);
    CHECK(s.invariant_factors == std::vector<Integer>{1});
    CHECK(s.U * a * s.V == s.D);
  }
  SECTION("zero matrix") {
    auto s = smith_normal_form(Matrix(2, 3));
    CHECK(s.invariant_factors.empty());
    CHECK(s.D.is_zero());
  }
}

TEST_CASE("smith normal form invariants on random matrices", "[lattice][snf][property]") {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    Matrix a = random_matrix(rng, dim(rng), dim(rng), 5);
    auto s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(is_diagonal(s.D));
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
      CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
    for (auto const& f : s.invariant_factors) CHECK(f > 0);
  }
}

TEST_CASE("cokernel on named matrices", "[lattice][cokernel]") {
  SECTION("column (2,-2) in Z^2 gives Z + Z/2") {
    auto c = cokernel(Matrix{{2}, {-2}});
    CHECK(c.group.free_rank == 1);
    CHECK(c.group.torsion_factors == std::vector<Integer>{2});
    CHECK(c.projection == Matrix{{1, 1}});
  }
  SECTION("no columns") {
    auto c = cokernel(Matrix(2, 0));
    CHECK(c.group == FgAbelianGroup{2, {}});
    CHECK(c.projection == Matrix::identity(2));
  }
  SECTION("column (1,1,-2) in Z^3 is free of rank 2") {
    auto c = cokernel(Matrix{{1}, {1}, {-2}});
    CHECK(c.group == FgAbelianGroup{2, {}});
    CHECK((c.projection * make_vector({1, 1, -2})) == make_vector({0, 0}));
  }
}

TEST_CASE("cokernel agrees with minors and coset enumeration", "[lattice][cokernel][property]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t m = dim(rng), n = dim(rng);
    Matrix a = random_matrix(rng, m, n, 3);
    auto c = cokernel(a);
    std::size_t r = rank(a);
    CHECK(c.group.free_rank == m - r);
    Integer order = 1;
    for (auto const& t : c.group.torsion_factors) order *= t;
    CHECK(order == gcd_of_minors(a, r));
    // The projection kills the relations and is onto the free part.
    CHECK((c.projection * a).is_zero());
    if (c.group.free_rank > 0) CHECK(right_inverse(c.projection).rows() == m);
    if (m == n && r == m) CHECK(Integer(coset_count_bfs(a)) == order);
  }
}

TEST_CASE("lattice_generated_by", "[lattice][hnf]") {
  SECTION("index-two sublattice") {
    std::vector<Vector> vs{make_vector({2, 0}), make_vector({0, 2}), make_vector({1, 1})};
    LatticeBasis lb(vs, 2);
    CHECK(lb.rank() == 2);
    CHECK(abs(determinant(lb.basis())) == 2);
    CHECK(lb.contains(make_vector({3, 1})));
    CHECK_FALSE(lb.contains(make_vector({1, 0})));
  }
  SECTION("full lattice") {
    CHECK(lattice_generated_by({make_vector({1, 0}), make_vector({0, 1})}, 2) == Matrix::identity(2));
  }
  SECTION("empty set") {
    Matrix b = lattice_generated_by({}, 3);
    CHECK(b.rows() == 3);
    CHECK(b.cols() == 0);
  }
}

TEST_CASE("lattice bases are canonical and idempotent", "[lattice][hnf][property]") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 4), count(0, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t d = dim(rng);
    Matrix g = random_matrix(rng, d, count(rng), 5);
    auto gens = g.columns();
    LatticeBasis lb(gens, d);
    CHECK(lattice_generated_by(lb.basis().columns(), d) == lb.basis());
    CHECK(g * lb.from_generators() == lb.basis());
    CHECK((g * lb.relations()).is_zero());
    for (auto const& v : gens) {
      auto c = lb.coordinates(v);
      REQUIRE(c);
      CHECK(lb.from_coordinates(*c) == v);
    }
    // Same lattice from a scrambled generating set.
    auto scrambled = gens;
    if (scrambled.size() >= 2) scrambled[0] = scrambled[0] + Integer(3) * scrambled[1];
    std::reverse(scrambled.begin(), scrambled.end());
    CHECK(LatticeBasis(scrambled, d) == lb);
  }
}

TEST_CASE("row hermite form is invariant under unimodular change", "[lattice][hnf]") {
  Matrix p{{1, 2, 3}, {0, 1, 4}};
  Matrix w{{2, 1}, {1, 1}};
  CHECK(row_hermite(w * p) == row_hermite(p));
}

TEST_CASE("lattice maps", "[lattice]") {
  std::vector<Vector> src{make_vector({2, 0}), make_vector({0, 2}), make_vector({1, 1})};
  std::vector<Vector> dst{make_vector({2}), make_vector({2}), make_vector({2})};
  auto f = LatticeMap::fit(src, dst, 2, 1);
  REQUIRE(f);
  CHECK(*f->apply(make_vector({3, 1})) == make_vector({4}));
  CHECK_FALSE(f->apply(make_vector({1, 0})));

  std::vector<Vector> bad{make_vector({2}), make_vector({2}), make_vector({1})};
  CHECK_FALSE(LatticeMap::fit(src, bad, 2, 1));
}
