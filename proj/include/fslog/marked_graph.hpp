#pragma once

// k-marked dual graphs and their characteristic monoids. Each index i carries
// a partition of the vertices into degenerate and non-degenerate ones, a
// contact order per edge and an orientation of every edge with positive
// contact. The monoid M(G) has a generator e_l per edge and e_v^(i) per vertex
// and index; the minimal monoid is the saturation of its torsion-free image.

#include "fslog/error.hpp"
#include "fslog/fs_limits.hpp"
#include "fslog/hom.hpp"
#include "fslog/lattice.hpp"
#include "fslog/monoid.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fslog {

struct GraphVertex {
  std::string id;
  std::vector<bool> degenerate;
  friend bool operator==(GraphVertex const&, GraphVertex const&) = default;
};

using Orientation = std::optional<std::pair<std::string, std::string>>;  // (lo, hi)

struct GraphEdge {
  std::string id;
  std::pair<std::string, std::string> ends;
  std::vector<Integer> contact;
  std::vector<Orientation> orientation;
  friend bool operator==(GraphEdge const&, GraphEdge const&) = default;
};

struct GraphLeg {
  std::string vertex;
  std::vector<Integer> contact;
  friend bool operator==(GraphLeg const&, GraphLeg const&) = default;
};

class MarkedGraph {
 public:
  MarkedGraph() = default;
  MarkedGraph(std::size_t num_indices, std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges,
              std::vector<GraphLeg> legs = {})
      : k_(num_indices), vertices_(std::move(vertices)), edges_(std::move(edges)), legs_(std::move(legs)) {
    validate();
    std::sort(vertices_.begin(), vertices_.end(), [](auto const& a, auto const& b) { return a.id < b.id; });
    std::sort(edges_.begin(), edges_.end(), [](auto const& a, auto const& b) { return a.id < b.id; });
  }

  std::size_t num_indices() const { return k_; }
  // Sorted by id.
  std::vector<GraphVertex> const& vertices() const { return vertices_; }
  std::vector<GraphEdge> const& edges() const { return edges_; }
  std::vector<GraphLeg> const& legs() const { return legs_; }

  std::size_t vertex_index(std::string const& id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](GraphVertex const& v, std::string const& x) { return v.id < x; });
    if (it == vertices_.end() || it->id != id) throw Error(ErrorCode::MalformedGraph, "unknown vertex " + id);
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  GraphVertex const& vertex(std::string const& id) const { return vertices_[vertex_index(id)]; }

  // Presentation generator order: edges, then (vertex, index).
  std::size_t num_generators() const { return edges_.size() + vertices_.size() * k_; }
  std::size_t edge_generator(std::size_t e) const { return e; }
  std::size_t vertex_generator(std::size_t v, std::size_t i) const { return edges_.size() + v * k_ + i; }

  bool same_underlying_graph(MarkedGraph const& o) const {
    if (vertices_.size() != o.vertices_.size() || edges_.size() != o.edges_.size() ||
        legs_.size() != o.legs_.size())
      return false;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (vertices_[v].id != o.vertices_[v].id) return false;
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (edges_[e].id != o.edges_[e].id || edges_[e].ends != o.edges_[e].ends) return false;
    for (std::size_t l = 0; l < legs_.size(); ++l)
      if (legs_[l].vertex != o.legs_[l].vertex) return false;
    return true;
  }

  friend bool operator==(MarkedGraph const&, MarkedGraph const&) = default;

 private:
  void validate() const {
    auto bad = [](std::string const& msg) { throw Error(ErrorCode::MalformedGraph, msg); };
    std::set<std::string> vids, eids;
    for (auto const& v : vertices_) {
      if (!vids.insert(v.id).second) bad("duplicate vertex id " + v.id);
      if (v.degenerate.size() != k_) bad("vertex " + v.id + " needs " + std::to_string(k_) + " degeneracy flags");
    }
    auto check_contact = [&](std::vector<Integer> const& c, std::string const& what) {
      if (c.size() != k_) bad(what + " needs " + std::to_string(k_) + " contact orders");
      for (auto const& x : c)
        if (x < 0) bad(what + " has a negative contact order");
    };
    for (auto const& e : edges_) {
      if (!eids.insert(e.id).second) bad("duplicate edge id " + e.id);
      if (!vids.count(e.ends.first) || !vids.count(e.ends.second)) bad("edge " + e.id + " has an unknown end");
      check_contact(e.contact, "edge " + e.id);
      if (e.orientation.size() != k_) bad("edge " + e.id + " needs " + std::to_string(k_) + " orientations");
      for (std::size_t i = 0; i < k_; ++i) {
        auto const& o = e.orientation[i];
        if ((e.contact[i] > 0) != o.has_value())
          bad("edge " + e.id + ": orientation at index " + std::to_string(i) +
              " must be given exactly when the contact is positive");
        if (o && !(*o == e.ends || (o->first == e.ends.second && o->second == e.ends.first)))
          bad("edge " + e.id + ": orientation does not match its ends");
      }
    }
    for (auto const& l : legs_) {
      if (!vids.count(l.vertex)) bad("leg on unknown vertex " + l.vertex);
      check_contact(l.contact, "leg on " + l.vertex);
    }
  }

  std::size_t k_ = 0;
  std::vector<GraphVertex> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<GraphLeg> legs_;
};

inline MonoidPresentation graph_presentation(MarkedGraph const& g) {
  std::size_t const n = g.num_generators(), k = g.num_indices();
  std::vector<Relation> rels;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    auto const& edge = g.edges()[e];
    for (std::size_t i = 0; i < k; ++i) {
      Relation r{zero_vector(n), zero_vector(n)};
      if (edge.contact[i] > 0) {
        auto const& [lo, hi] = *edge.orientation[i];
        r.lhs[g.vertex_generator(g.vertex_index(hi), i)] += 1;
        r.rhs[g.vertex_generator(g.vertex_index(lo), i)] += 1;
        r.rhs[g.edge_generator(e)] += edge.contact[i];
      } else {
        r.lhs[g.vertex_generator(g.vertex_index(edge.ends.second), i)] += 1;
        r.rhs[g.vertex_generator(g.vertex_index(edge.ends.first), i)] += 1;
      }
      rels.push_back(std::move(r));
    }
  }
  for (std::size_t v = 0; v < g.vertices().size(); ++v)
    for (std::size_t i = 0; i < k; ++i)
      if (!g.vertices()[v].degenerate[i]) {
        Relation r{zero_vector(n), zero_vector(n)};
        r.lhs[g.vertex_generator(v, i)] = 1;
        rels.push_back(std::move(r));
      }
  return MonoidPresentation(n, std::move(rels));
}

// The minimal monoid with the image of every presentation generator.
struct GraphMonoid {
  MarkedGraph graph;
  AffineMonoid monoid;
  std::vector<Vector> generator_images;

  Vector const& edge_image(std::size_t e) const { return generator_images[graph.edge_generator(e)]; }
  Vector const& vertex_image(std::size_t v, std::size_t i) const {
    return generator_images[graph.vertex_generator(v, i)];
  }
};

inline GraphMonoid minimal_monoid(MarkedGraph const& g) {
  Groupification gp = groupify(graph_presentation(g));
  AffineMonoid image(gp.group.free_rank, gp.generator_images);
  if (!image.is_sharp())
    throw Error(ErrorCode::InconsistentGraph, "the graph monoid has nontrivial units");
  return {g, saturate(image), gp.generator_images};
}

// A candidate base monoid with the images of the graph generators.
struct BaseMonoidCandidate {
  AffineMonoid monoid;
  std::map<std::string, Vector> edge_params;
  std::map<std::string, std::vector<Vector>> vertex_params;  // one per index
  friend bool operator==(BaseMonoidCandidate const&, BaseMonoidCandidate const&) = default;
};

namespace detail {

// Values of the presentation generators of g under the candidate, checking the
// edge and vertex equations.
inline std::vector<Vector> candidate_values(MarkedGraph const& g, BaseMonoidCandidate const& s) {
  std::size_t const r = s.monoid.ambient_rank(), k = g.num_indices();
  std::vector<Vector> values(g.num_generators());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    auto it = s.edge_params.find(g.edges()[e].id);
    if (it == s.edge_params.end() || it->second.size() != r)
      throw Error(ErrorCode::DimensionMismatch, "missing or malformed parameter for edge " + g.edges()[e].id);
    values[g.edge_generator(e)] = it->second;
  }
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    auto const& id = g.vertices()[v].id;
    if (k == 0) continue;
    auto it = s.vertex_params.find(id);
    if (it == s.vertex_params.end() || it->second.size() != k)
      throw Error(ErrorCode::DimensionMismatch, "missing or malformed parameters for vertex " + id);
    for (std::size_t i = 0; i < k; ++i) {
      if (it->second[i].size() != r)
        throw Error(ErrorCode::DimensionMismatch, "parameter of vertex " + id + " has wrong length");
      values[g.vertex_generator(v, i)] = it->second[i];
    }
  }
  MonoidPresentation const p = graph_presentation(g);
  for (auto const& rel : p.relations()) {
    Vector lhs = zero_vector(r), rhs = zero_vector(r);
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (rel.lhs[j] != 0) lhs += rel.lhs[j] * values[j];
      if (rel.rhs[j] != 0) rhs += rel.rhs[j] * values[j];
    }
    if (lhs != rhs) throw Error(ErrorCode::RelationViolated, "candidate breaks an edge or vertex equation");
  }
  return values;
}

}  // namespace detail

// The morphism from the minimal monoid to the candidate's monoid.
inline MonoidHom canonical_map(GraphMonoid const& gm, BaseMonoidCandidate const& s) {
  auto values = detail::candidate_values(gm.graph, s);
  return hom_from_values(gm.monoid, gm.generator_images, values, s.monoid);
}

inline MonoidHom canonical_map(MarkedGraph const& g, BaseMonoidCandidate const& s) {
  return canonical_map(minimal_monoid(g), s);
}

inline bool is_minimal(MarkedGraph const& g, BaseMonoidCandidate const& s) {
  return is_isomorphism(canonical_map(g, s));
}

// The minimal monoid regarded as a candidate over itself.
inline BaseMonoidCandidate canonical_candidate(GraphMonoid const& gm) {
  BaseMonoidCandidate s{gm.monoid, {}, {}};
  auto const& g = gm.graph;
  for (std::size_t e = 0; e < g.edges().size(); ++e) s.edge_params[g.edges()[e].id] = gm.edge_image(e);
  for (std::size_t v = 0; v < g.vertices().size(); ++v)
    for (std::size_t i = 0; i < g.num_indices(); ++i)
      s.vertex_params[g.vertices()[v].id].push_back(gm.vertex_image(v, i));
  return s;
}

// The graph with k' = A.cols() indices whose index j combines the indices i of
// g with weights A(i, j): contacts add up, a vertex is degenerate at j when it
// is degenerate at some contributing index, and orientations are inherited
// from contributing indices with positive contact (which must agree).
inline MarkedGraph derive_graph(MarkedGraph const& g, Matrix const& a) {
  if (a.rows() != g.num_indices())
    throw Error(ErrorCode::DimensionMismatch, "weight matrix must have one row per index");
  for (auto const& x : a.entries())
    if (x < 0) throw Error(ErrorCode::IncompatibleData, "weight matrix must be nonnegative");
  std::size_t const k = a.cols();
  auto combine = [&](std::vector<Integer> const& c) {
    std::vector<Integer> out(k, Integer(0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < c.size(); ++i) out[j] += a(i, j) * c[i];
    return out;
  };

  std::vector<GraphVertex> vs;
  for (auto const& v : g.vertices()) {
    GraphVertex d{v.id, std::vector<bool>(k, false)};
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < g.num_indices(); ++i)
        if (a(i, j) > 0 && v.degenerate[i]) d.degenerate[j] = true;
    vs.push_back(std::move(d));
  }
  std::vector<GraphEdge> es;
  for (auto const& e : g.edges()) {
    GraphEdge d{e.id, e.ends, combine(e.contact), std::vector<Orientation>(k)};
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < g.num_indices(); ++i) {
        if (a(i, j) == 0 || e.contact[i] == 0) continue;
        if (d.orientation[j] && *d.orientation[j] != *e.orientation[i] && e.ends.first != e.ends.second)
          throw Error(ErrorCode::IncompatibleData, "edge " + e.id + ": contributing orientations disagree");
        d.orientation[j] = e.orientation[i];
      }
    es.push_back(std::move(d));
  }
  std::vector<GraphLeg> ls;
  for (auto const& l : g.legs()) ls.push_back({l.vertex, combine(l.contact)});
  return MarkedGraph(k, std::move(vs), std::move(es), std::move(ls));
}

// M̄(src) -> M̄(tgt) with e_l -> e_l and e_v^(j) -> sum_i A(i, j) e_v^(i), for
// a k_tgt x k_src matrix A.
inline MonoidHom induced_graph_hom(GraphMonoid const& src, GraphMonoid const& tgt, Matrix const& a) {
  MarkedGraph const& gs = src.graph;
  MarkedGraph const& gt = tgt.graph;
  auto fail = [](std::string const& msg) { throw Error(ErrorCode::IncompatibleData, msg); };
  if (!gs.same_underlying_graph(gt)) fail("graphs have different underlying dual graphs");
  if (a.rows() != gt.num_indices() || a.cols() != gs.num_indices())
    fail("weight matrix must be " + std::to_string(gt.num_indices()) + "x" + std::to_string(gs.num_indices()));
  for (auto const& x : a.entries())
    if (x < 0) fail("weight matrix must be nonnegative");

  for (std::size_t e = 0; e < gs.edges().size(); ++e) {
    auto const& es = gs.edges()[e];
    auto const& et = gt.edges()[e];
    for (std::size_t j = 0; j < gs.num_indices(); ++j) {
      Integer sum = 0;
      for (std::size_t i = 0; i < gt.num_indices(); ++i) sum += a(i, j) * et.contact[i];
      if (sum != es.contact[j])
        fail("edge " + es.id + ": contact at index " + std::to_string(j) + " is not the weighted sum");
      if (es.contact[j] == 0 || es.ends.first == es.ends.second) continue;
      for (std::size_t i = 0; i < gt.num_indices(); ++i)
        if (a(i, j) > 0 && et.contact[i] > 0 && et.orientation[i] != es.orientation[j])
          fail("edge " + es.id + ": orientations disagree");
    }
  }
  for (std::size_t v = 0; v < gs.vertices().size(); ++v)
    for (std::size_t j = 0; j < gs.num_indices(); ++j) {
      if (gs.vertices()[v].degenerate[j]) continue;
      for (std::size_t i = 0; i < gt.num_indices(); ++i)
        if (a(i, j) > 0 && gt.vertices()[v].degenerate[i])
          fail("vertex " + gs.vertices()[v].id + " is non-degenerate at " + std::to_string(j) +
               " but maps to a degenerate index");
    }

  BaseMonoidCandidate s{tgt.monoid, {}, {}};
  for (std::size_t e = 0; e < gt.edges().size(); ++e) s.edge_params[gt.edges()[e].id] = tgt.edge_image(e);
  for (std::size_t v = 0; v < gt.vertices().size(); ++v)
    for (std::size_t j = 0; j < gs.num_indices(); ++j) {
      Vector y = zero_vector(tgt.monoid.ambient_rank());
      for (std::size_t i = 0; i < gt.num_indices(); ++i)
        if (a(i, j) != 0) y += a(i, j) * tgt.vertex_image(v, i);
      s.vertex_params[gt.vertices()[v].id].push_back(std::move(y));
    }
  try {
    return canonical_map(src, s);
  } catch (Error const& e) {
    if (e.code() == ErrorCode::ScaleExceeded) throw;
    throw Error(ErrorCode::IncompatibleData, e.detail());
  }
}

inline MonoidHom induced_graph_hom(MarkedGraph const& src, MarkedGraph const& tgt, Matrix const& a) {
  return induced_graph_hom(minimal_monoid(src), minimal_monoid(tgt), a);
}

// ---------------------------------------------------------------------------
// Base monoids that are themselves coequalizers P = coeq(v1, v2: N^{n2} => N^{n1}).

struct GeneralizedMonoid {
  GraphMonoid g1, g2, g3;
  MonoidHom to_g1;  // M̄(G3) -> M̄(G1) via [v1 | v2]
  MonoidHom to_g2;  // M̄(G3) -> M̄(G2) via [I | I]
  PushoutResult pushout;
  Sharpening sharpening;

  AffineMonoid const& monoid() const { return sharpening.monoid; }
  // Images in the sharpened pushout.
  Vector from_g1(Vector const& x) const { return sharpening.projection.apply(pushout.from_P.apply(x)); }
  Vector from_g2(Vector const& x) const { return sharpening.projection.apply(pushout.from_R.apply(x)); }
};

// G2: indices of the coequalizer's N^{n2}, data pulled back along v1, which
// must agree with the pull-back along v2.
inline MarkedGraph derived_graph_g2(CoequalizerInput const& inp, MarkedGraph const& g1) {
  if (g1.num_indices() != inp.n1)
    throw Error(ErrorCode::IncompatibleData, "graph has " + std::to_string(g1.num_indices()) +
                                                 " indices, presentation has " + std::to_string(inp.n1));
  MarkedGraph a = derive_graph(g1, inp.v1);
  MarkedGraph b = derive_graph(g1, inp.v2);
  for (std::size_t e = 0; e < a.edges().size(); ++e) {
    auto const& ea = a.edges()[e];
    auto const& eb = b.edges()[e];
    if (ea.contact != eb.contact)
      throw Error(ErrorCode::IncompatibleData, "edge " + ea.id + ": derived contacts differ along v1 and v2");
    if (ea.ends.first != ea.ends.second && ea.orientation != eb.orientation)
      throw Error(ErrorCode::IncompatibleData, "edge " + ea.id + ": derived orientations differ");
  }
  for (std::size_t v = 0; v < a.vertices().size(); ++v)
    if (a.vertices()[v].degenerate != b.vertices()[v].degenerate)
      throw Error(ErrorCode::IncompatibleData,
                  "vertex " + a.vertices()[v].id + ": derived degeneracy differs along v1 and v2");
  return a;
}

inline MarkedGraph derived_graph_g3(MarkedGraph const& g2) {
  std::size_t const k = g2.num_indices();
  Matrix twice(k, 2 * k);
  for (std::size_t j = 0; j < k; ++j) twice(j, j) = twice(j, k + j) = 1;
  return derive_graph(g2, twice);
}

inline GeneralizedMonoid minimal_monoid_generalized(CoequalizerInput const& inp, MarkedGraph const& g1) {
  MarkedGraph g2 = derived_graph_g2(inp, g1);
  MarkedGraph g3 = derived_graph_g3(g2);
  GraphMonoid m1 = minimal_monoid(g1), m2 = minimal_monoid(g2), m3 = minimal_monoid(g3);

  Matrix to1(inp.n1, 2 * inp.n2), to2(inp.n2, 2 * inp.n2);
  for (std::size_t j = 0; j < inp.n2; ++j) {
    for (std::size_t i = 0; i < inp.n1; ++i) {
      to1(i, j) = inp.v1(i, j);
      to1(i, inp.n2 + j) = inp.v2(i, j);
    }
    to2(j, j) = to2(j, inp.n2 + j) = 1;
  }
  MonoidHom h1 = induced_graph_hom(m3, m1, to1);
  MonoidHom h2 = induced_graph_hom(m3, m2, to2);
  PushoutResult po = pushout_fs(h1, h2);
  Sharpening sh = sharpen(po.apex);
  return {std::move(m1), std::move(m2), std::move(m3), std::move(h1), std::move(h2), std::move(po), std::move(sh)};
}

// The map M̄ -> S.monoid induced by the candidate on G1 and its pull-back to G2.
inline MonoidHom generalized_canonical_map(CoequalizerInput const& inp, GeneralizedMonoid const& gm,
                                           BaseMonoidCandidate const& s) {
  MonoidHom alpha = canonical_map(gm.g1, s);

  BaseMonoidCandidate s2{s.monoid, s.edge_params, {}};
  for (auto const& [id, params] : s.vertex_params) {
    if (params.size() != inp.n1) continue;  // canonical_map above already rejected this
    for (std::size_t j = 0; j < inp.n2; ++j) {
      Vector a = zero_vector(s.monoid.ambient_rank()), b = a;
      for (std::size_t i = 0; i < inp.n1; ++i) {
        if (inp.v1(i, j) != 0) a += inp.v1(i, j) * params[i];
        if (inp.v2(i, j) != 0) b += inp.v2(i, j) * params[i];
      }
      if (a != b) throw Error(ErrorCode::RelationViolated, "vertex " + id + " breaks a coequalizer relation");
      s2.vertex_params[id].push_back(std::move(a));
    }
  }
  MonoidHom beta = canonical_map(gm.g2, s2);

  // Through the pushout, then through the sharpening.
  auto const& po = gm.pushout;
  std::vector<Vector> elems = po.from_P.images(), vals = alpha.images();
  elems.insert(elems.end(), po.from_R.images().begin(), po.from_R.images().end());
  vals.insert(vals.end(), beta.images().begin(), beta.images().end());
  MonoidHom phi = hom_from_values(po.apex, elems, vals, s.monoid);

  std::vector<Vector> sharp_elems;
  for (auto const& g : po.apex.generators()) sharp_elems.push_back(gm.sharpening.projection.apply(g));
  return hom_from_values(gm.monoid(), sharp_elems, phi.images(), s.monoid);
}

inline bool check_minimal_generalized(CoequalizerInput const& inp, MarkedGraph const& g1,
                                      BaseMonoidCandidate const& s) {
  GeneralizedMonoid gm = minimal_monoid_generalized(inp, g1);
  return is_isomorphism(generalized_canonical_map(inp, gm, s));
}

// M̄ regarded as a candidate over G1, through the pushout and sharpening.
inline BaseMonoidCandidate canonical_candidate(GeneralizedMonoid const& gm) {
  BaseMonoidCandidate s{gm.monoid(), {}, {}};
  auto const& g = gm.g1.graph;
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    s.edge_params[g.edges()[e].id] = gm.from_g1(gm.g1.edge_image(e));
  for (std::size_t v = 0; v < g.vertices().size(); ++v)
    for (std::size_t i = 0; i < g.num_indices(); ++i)
      s.vertex_params[g.vertices()[v].id].push_back(gm.from_g1(gm.g1.vertex_image(v, i)));
  return s;
}

}  // namespace fslog
