#pragma once

// Pushouts and coequalizers of fine saturated, torsion-free monoids. These are
// the chart-level duals of fiber products and equalizers of fs log schemes:
// a limit of log schemes has the colimit of the chart monoids as its chart.
// Every colimit is formed in the groupification, imaged, torsion killed and
// then saturated.

#include "fslog/error.hpp"
#include "fslog/hom.hpp"
#include "fslog/lattice.hpp"
#include "fslog/monoid.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fslog {

struct PushoutResult {
  AffineMonoid apex;
  MonoidHom from_P;
  MonoidHom from_R;
};

// Two parallel maps N^{n2} => N^{n1}; column j of v1 (resp. v2) is the image
// of the j-th basis vector.
struct CoequalizerInput {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  Matrix v1;
  Matrix v2;

  CoequalizerInput() = default;
  CoequalizerInput(std::size_t n1_, std::size_t n2_, Matrix v1_, Matrix v2_)
      : n1(n1_), n2(n2_), v1(std::move(v1_)), v2(std::move(v2_)) {
    for (Matrix const* m : {&v1, &v2}) {
      if (m->rows() != n1 || m->cols() != n2)
        throw Error(ErrorCode::DimensionMismatch,
                    "coequalizer matrices must be " + std::to_string(n1) + "x" + std::to_string(n2));
      for (auto const& e : m->entries())
        if (e < 0) throw Error(ErrorCode::DimensionMismatch, "coequalizer matrices must be nonnegative");
    }
  }

  friend bool operator==(CoequalizerInput const&, CoequalizerInput const&) = default;
};

// The fs pushout of P <-u- Q -v-> R.
inline PushoutResult pushout_fs(MonoidHom const& u, MonoidHom const& v) {
  if (!(u.source() == v.source()))
    throw Error(ErrorCode::DimensionMismatch, "pushout legs have different sources");
  AffineMonoid const& p = u.target();
  AffineMonoid const& r = v.target();
  std::size_t const kp = p.rank(), kr = r.rank();
  std::size_t const nq = u.images().size();

  Matrix rel(kp + kr, nq);
  for (std::size_t j = 0; j < nq; ++j) {
    Vector a = *p.gp_lattice().coordinates(u.images()[j]);
    Vector b = *r.gp_lattice().coordinates(v.images()[j]);
    for (std::size_t i = 0; i < kp; ++i) rel(i, j) = a[i];
    for (std::size_t i = 0; i < kr; ++i) rel(kp + i, j) = -b[i];
  }
  Cokernel c = cokernel(rel);
  std::size_t const f = c.group.free_rank;

  auto image_of = [&](Vector const& coords, std::size_t offset) {
    Vector y = zero_vector(f);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0)
        for (std::size_t t = 0; t < f; ++t) y[t] += coords[i] * c.projection(t, offset + i);
    return y;
  };

  std::vector<Vector> from_p, from_r, all;
  for (auto const& coords : p.generator_coordinates()) from_p.push_back(image_of(coords, 0));
  for (auto const& coords : r.generator_coordinates()) from_r.push_back(image_of(coords, kp));
  all = from_p;
  all.insert(all.end(), from_r.begin(), from_r.end());
  AffineMonoid apex = saturate(AffineMonoid(f, all));

  MonoidHom hp(p, apex, std::move(from_p));
  MonoidHom hr(r, apex, std::move(from_r));
  return {std::move(apex), std::move(hp), std::move(hr)};
}

struct CoequalizerResult {
  AffineMonoid apex;
  MonoidHom q;  // from the free monoid N^{n1}
};

inline MonoidPresentation coequalizer_presentation(CoequalizerInput const& inp) {
  std::vector<Relation> rels;
  for (std::size_t j = 0; j < inp.n2; ++j) rels.push_back({inp.v1.column(j), inp.v2.column(j)});
  return MonoidPresentation(inp.n1, std::move(rels));
}

inline CoequalizerResult coequalizer_fs(CoequalizerInput const& inp) {
  Groupification g = groupify(coequalizer_presentation(inp));
  AffineMonoid apex = saturate(AffineMonoid(g.group.free_rank, g.generator_images));
  MonoidHom q = free_hom(inp.n1, g.generator_images, apex);
  return {std::move(apex), std::move(q)};
}

// claimed is a pushout of (u, v): it is a commuting cone over the span and the
// comparison map from the computed pushout is an isomorphism.
inline bool verify_pushout_square(MonoidHom const& u, MonoidHom const& v, PushoutResult const& claimed) {
  if (!claimed.from_P.has_monoid_source() || !claimed.from_R.has_monoid_source()) return false;
  if (!(claimed.from_P.source_monoid() == u.target()) || !(claimed.from_R.source_monoid() == v.target()))
    return false;
  if (!(claimed.from_P.target() == claimed.apex) || !(claimed.from_R.target() == claimed.apex)) return false;
  if (u.images().size() != v.images().size()) return false;
  for (std::size_t j = 0; j < u.images().size(); ++j)
    if (claimed.from_P.apply(u.images()[j]) != claimed.from_R.apply(v.images()[j])) return false;

  PushoutResult computed = pushout_fs(u, v);
  std::vector<Vector> elements = computed.from_P.images();
  elements.insert(elements.end(), computed.from_R.images().begin(), computed.from_R.images().end());
  std::vector<Vector> values = claimed.from_P.images();
  values.insert(values.end(), claimed.from_R.images().begin(), claimed.from_R.images().end());
  try {
    MonoidHom phi = hom_from_values(computed.apex, elements, values, claimed.apex);
    return is_isomorphism(phi);
  } catch (Error const& e) {
    if (e.code() == ErrorCode::ScaleExceeded) throw;
    return false;
  }
}

// The span N^{n1} <-[v1|v2]- N^{2 n2} -[I|I]-> N^{n2} whose pushout is the
// coequalizer of v1, v2.
struct Span {
  MonoidHom u;
  MonoidHom v;
};

inline Span coequalizer_span(CoequalizerInput const& inp) {
  std::vector<Vector> ui, vi;
  for (std::size_t j = 0; j < inp.n2; ++j) ui.push_back(inp.v1.column(j));
  for (std::size_t j = 0; j < inp.n2; ++j) ui.push_back(inp.v2.column(j));
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t j = 0; j < inp.n2; ++j) vi.push_back(unit_vector(inp.n2, j));
  return {free_hom(2 * inp.n2, ui, AffineMonoid::free(inp.n1)),
          free_hom(2 * inp.n2, vi, AffineMonoid::free(inp.n2))};
}

// The coequalizer viewed as a cone over coequalizer_span: N^{n2} maps through
// either leg, here v1.
inline PushoutResult coequalizer_cone(CoequalizerInput const& inp, CoequalizerResult const& c) {
  std::vector<Vector> from_r;
  for (std::size_t j = 0; j < inp.n2; ++j) from_r.push_back(c.q.apply(inp.v1.column(j)));
  return {c.apex, c.q, free_hom(inp.n2, from_r, c.apex)};
}

}  // namespace fslog
