#include "fslog/fs_limits.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <numeric>
#include <random>

using namespace fslog;

namespace {

std::vector<Vector> vecs(std::vector<std::vector<long long>> gens) {
  std::vector<Vector> vs;
  for (auto const& g : gens) {
    Vector v;
    for (long long x : g) v.emplace_back(x);
    vs.push_back(v);
  }
  return vs;
}

AffineMonoid square_cone() { return AffineMonoid(2, vecs({{2, 0}, {1, 1}, {0, 2}})); }

CoequalizerInput square_cone_input() {
  return CoequalizerInput(3, 1, Matrix{{1}, {1}, {0}}, Matrix{{0}, {0}, {2}});
}

CoequalizerInput random_input(std::mt19937& rng, int max_n1, int max_n2, int bound) {
  std::uniform_int_distribution<int> n1d(1, max_n1), n2d(0, max_n2), e(0, bound);
  std::size_t n1 = n1d(rng), n2 = n2d(rng);
  Matrix v1(n1, n2), v2(n1, n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      v1(i, j) = e(rng);
      v2(i, j) = e(rng);
    }
  return CoequalizerInput(n1, n2, v1, v2);
}

AffineMonoid random_saturated(std::mt19937& rng, int max_rank, int bound) {
  std::uniform_int_distribution<int> rk(1, max_rank), ng(1, 3), coord(0, bound);
  while (true) {
    std::size_t r = rk(rng);
    std::vector<Vector> gens;
    for (int i = ng(rng); i > 0; --i) {
      Vector g(r);
      for (auto& x : g) x = coord(rng);
      gens.push_back(g);
    }
    AffineMonoid m(r, gens);
    if (!m.is_trivial() && m.is_sharp()) return saturate(m);
  }
}

// Sums of at most `terms` generators of m, including zero.
std::vector<Vector> small_elements(AffineMonoid const& m, int terms) {
  std::set<Vector> out{zero_vector(m.ambient_rank())};
  for (int t = 0; t < terms; ++t) {
    std::set<Vector> next = out;
    for (auto const& x : out)
      for (auto const& g : m.generators()) next.insert(x + g);
    out = std::move(next);
  }
  return {out.begin(), out.end()};
}

Vector random_element(std::mt19937& rng, AffineMonoid const& m) {
  std::uniform_int_distribution<int> c(0, 2);
  Vector x = zero_vector(m.ambient_rank());
  for (auto const& g : m.generators()) x += Integer(c(rng)) * g;
  return x;
}

// Every homomorphism src -> tgt sending generators to the given candidates.
std::vector<MonoidHom> candidate_homs(AffineMonoid const& src, AffineMonoid const& tgt,
                                      std::vector<Vector> const& cands, std::size_t cap) {
  std::vector<MonoidHom> out;
  std::size_t n = src.generators().size();
  std::vector<std::size_t> pick(n, 0);
  while (out.size() < cap) {
    std::vector<Vector> images;
    for (std::size_t i : pick) images.push_back(cands[i]);
    try {
      out.emplace_back(src, tgt, images);
    } catch (Error const&) {
    }
    std::size_t pos = 0;
    while (pos < n && ++pick[pos] == cands.size()) pick[pos++] = 0;
    if (pos == n) break;
  }
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

TEST_CASE("pushout named instances", "[limits][pushout]") {
  auto n = AffineMonoid::free(1);
  SECTION("trivial Q gives the coproduct") {
    MonoidHom u(AffineMonoid(), n, {}), v(AffineMonoid(), n, {});
    auto po = pushout_fs(u, v);
    CHECK(po.apex == AffineMonoid::free(2));
    CHECK(po.from_P.images() == vecs({{1, 0}}));
    CHECK(po.from_R.images() == vecs({{0, 1}}));
  }
  SECTION("N <-x2- N -id-> N") {
    MonoidHom u(n, n, vecs({{2}})), v(n, n, vecs({{1}}));
    auto po = pushout_fs(u, v);
    CHECK(po.apex == n);
    CHECK(po.from_P.images() == vecs({{1}}));
    CHECK(po.from_R.images() == vecs({{2}}));
    CHECK(verify_pushout_square(u, v, po));
  }
  SECTION("square cone as a pushout over N^2") {
    auto u = free_hom(2, vecs({{1, 1, 0}, {0, 0, 2}}), AffineMonoid::free(3));
    MonoidHom v(AffineMonoid::free(2), n, vecs({{1}, {1}}));
    auto po = pushout_fs(u, v);
    CHECK(iso_check(po.apex, square_cone()));
    CHECK(po.apex.hilbert_basis().size() == 3);
  }
}

TEST_CASE("coequalizer named instances", "[limits][coeq]") {
  SECTION("two generators identified") {
    auto c = coequalizer_fs(CoequalizerInput(2, 1, Matrix{{1}, {0}}, Matrix{{0}, {1}}));
    CHECK(c.apex == AffineMonoid::free(1));
    CHECK(c.q.images() == vecs({{1}, {1}}));
  }
  SECTION("no relations") {
    auto c = coequalizer_fs(CoequalizerInput(3, 0, Matrix(3, 0), Matrix(3, 0)));
    CHECK(c.apex == AffineMonoid::free(3));
    CHECK(c.q.images() == AffineMonoid::free(3).generators());
  }
  SECTION("square cone") {
    auto c = coequalizer_fs(square_cone_input());
    CHECK(iso_check(c.apex, square_cone()));
    CHECK(abs(determinant(LatticeBasis(c.q.images(), 2).basis())) == 1);
  }
}

TEST_CASE("verify_pushout_square named instances", "[limits][verify]") {
  auto inp = square_cone_input();
  auto span = coequalizer_span(inp);
  SECTION("computed pushout against itself") {
    CHECK(verify_pushout_square(span.u, span.v, pushout_fs(span.u, span.v)));
  }
  SECTION("coequalizer presentation against the pushout square") {
    CHECK(verify_pushout_square(span.u, span.v, coequalizer_cone(inp, coequalizer_fs(inp))));
  }
  SECTION("apex replaced by N^2") {
    auto n2 = AffineMonoid::free(2);
    PushoutResult fake{n2, free_hom(3, vecs({{2, 0}, {0, 2}, {1, 1}}), n2), free_hom(1, vecs({{2, 2}}), n2)};
    CHECK_FALSE(verify_pushout_square(span.u, span.v, fake));
  }
  SECTION("non-commuting cone") {
    auto po = pushout_fs(span.u, span.v);
    PushoutResult bad{po.apex, po.from_P, free_hom(1, {zero_vector(po.apex.ambient_rank())}, po.apex)};
    CHECK_FALSE(verify_pushout_square(span.u, span.v, bad));
  }
}

TEST_CASE("square-cone coequalizer matches the congruence closure", "[limits][coeq][oracle]") {
  // a + b = 2c generates a cancellative congruence on N^3; compare its classes
  // with the fibres of q on every element of total degree <= 6.
  auto inp = square_cone_input();
  auto c = coequalizer_fs(inp);
  int const max_deg = 6;
  std::vector<Vector> pts;
  std::map<Vector, std::size_t> index;
  for (int a = 0; a <= max_deg; ++a)
    for (int b = 0; a + b <= max_deg; ++b)
      for (int d = 0; a + b + d <= max_deg; ++d) {
        index[make_vector({a, b, d})] = pts.size();
        pts.push_back(make_vector({a, b, d}));
      }
  UnionFind uf(pts.size());
  Vector lhs = inp.v1.column(0), rhs = inp.v2.column(0);
  for (auto const& x : pts) {
    auto i = index.find(x + lhs), j = index.find(x + rhs);
    if (i != index.end() && j != index.end()) uf.join(i->second, j->second);
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      CHECK((uf.find(i) == uf.find(j)) == (c.q.apply(pts[i]) == c.q.apply(pts[j])));
}

TEST_CASE("congruence classes refine the coequalizer fibres", "[limits][coeq][oracle]") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto inp = random_input(rng, 3, 2, 2);
    auto c = coequalizer_fs(inp);
    std::vector<Vector> pts;
    std::map<Vector, std::size_t> index;
    Vector x = zero_vector(inp.n1);
    while (true) {
      index[x] = pts.size();
      pts.push_back(x);
      std::size_t pos = 0;
      while (pos < inp.n1 && ++x[pos] > 4) x[pos++] = 0;
      if (pos == inp.n1) break;
    }
    UnionFind uf(pts.size());
    for (std::size_t j = 0; j < inp.n2; ++j)
      for (auto const& p : pts) {
        auto a = index.find(p + inp.v1.column(j)), b = index.find(p + inp.v2.column(j));
        if (a != index.end() && b != index.end()) uf.join(a->second, b->second);
      }
    for (std::size_t i = 0; i < pts.size(); ++i)
      CHECK(c.q.apply(pts[i]) == c.q.apply(pts[uf.find(i)]));
  }
}

TEST_CASE("pushout squares commute and are symmetric", "[limits][pushout][property]") {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> nq(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_saturated(rng, 2, 3);
    auto r = random_saturated(rng, 2, 3);
    auto q = AffineMonoid::free(nq(rng));
    std::vector<Vector> ui, vi;
    for (std::size_t j = 0; j < q.generators().size(); ++j) {
      ui.push_back(random_element(rng, p));
      vi.push_back(random_element(rng, r));
    }
    MonoidHom u(q, p, ui), v(q, r, vi);
    auto po = pushout_fs(u, v);
    for (std::size_t j = 0; j < ui.size(); ++j) CHECK(po.from_P.apply(ui[j]) == po.from_R.apply(vi[j]));
    CHECK(saturate(po.apex) == po.apex);
    auto swapped = pushout_fs(v, u);
    CHECK(verify_pushout_square(u, v, PushoutResult{swapped.apex, swapped.from_R, swapped.from_P}));
  }
}

TEST_CASE("coequalizer agrees with the pushout square", "[limits][property]") {
  std::mt19937 rng(141);
  for (int trial = 0; trial < 50; ++trial) {
    auto inp = random_input(rng, 4, 2, 3);
    auto span = coequalizer_span(inp);
    CHECK(verify_pushout_square(span.u, span.v, coequalizer_cone(inp, coequalizer_fs(inp))));
  }
}

TEST_CASE("pushout universal property on small instances", "[limits][pushout][property]") {
  std::mt19937 rng(1618);
  int cones = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto p = random_saturated(rng, 2, 2);
    auto r = random_saturated(rng, 2, 2);
    auto t = random_saturated(rng, 2, 2);
    auto q = AffineMonoid::free(1);
    MonoidHom u(q, p, {random_element(rng, p)}), v(q, r, {random_element(rng, r)});
    auto po = pushout_fs(u, v);
    auto cands = small_elements(t, 2);
    auto ps = candidate_homs(p, t, cands, 40);
    auto rs = candidate_homs(r, t, cands, 40);
    for (auto const& ph : ps)
      for (auto const& rh : rs) {
        if (ph.apply(u.images()[0]) != rh.apply(v.images()[0])) continue;
        ++cones;
        std::vector<Vector> elems = po.from_P.images(), vals = ph.images();
        elems.insert(elems.end(), po.from_R.images().begin(), po.from_R.images().end());
        vals.insert(vals.end(), rh.images().begin(), rh.images().end());
        // Existence; uniqueness holds because the structure images span the apex.
        MonoidHom phi = hom_from_values(po.apex, elems, vals, t);
        CHECK(compose(phi, po.from_P).images() == ph.images());
        CHECK(compose(phi, po.from_R).images() == rh.images());
        CHECK(LatticeBasis(elems, po.apex.ambient_rank()) == po.apex.gp_lattice());
      }
  }
  CHECK(cones >= 20);
}
