#pragma once

// JSON encoding of every core type. Integers below 2^53 in absolute value are
// JSON numbers, larger ones decimal strings; the parsers take either form.

#include "fslog/discrete_data.hpp"
#include "fslog/fs_limits.hpp"
#include "fslog/hom.hpp"
#include "fslog/marked_graph.hpp"
#include "fslog/monoid.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fslog::json {

using Json = nlohmann::json;

// Malformed input: bad JSON, wrong types, missing fields.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Integer const& safe_bound() {
  static Integer const bound = Integer(1) << 53;
  return bound;
}

inline Json const& field(Json const& j, char const* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with field \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline Json const& array(Json const& j, char const* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

}  // namespace detail

inline Json to_json(Integer const& x) {
  if (abs(x) < detail::safe_bound()) return Json(static_cast<std::int64_t>(x));
  return Json(x.str());
}

inline Integer integer_from_json(Json const& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    auto const& s = j.get_ref<std::string const&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start) throw ParseError("empty integer string");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw ParseError("not a decimal integer: \"" + s + "\"");
    return Integer(s);
  }
  throw ParseError("expected an integer, got " + j.dump());
}

inline std::size_t count_from_json(Json const& j, char const* what) {
  Integer x = integer_from_json(j);
  if (x < 0 || x > 1000000) throw ParseError(std::string(what) + " out of range");
  return static_cast<std::size_t>(x);
}

inline Json to_json(Vector const& v) {
  Json a = Json::array();
  for (auto const& x : v) a.push_back(to_json(x));
  return a;
}

inline Vector vector_from_json(Json const& j) {
  Vector v;
  for (auto const& x : detail::array(j, "vector")) v.push_back(integer_from_json(x));
  return v;
}

inline Json to_json(std::vector<Vector> const& vs) {
  Json a = Json::array();
  for (auto const& v : vs) a.push_back(to_json(v));
  return a;
}

inline std::vector<Vector> vectors_from_json(Json const& j) {
  std::vector<Vector> out;
  for (auto const& x : detail::array(j, "vector list")) out.push_back(vector_from_json(x));
  return out;
}

inline std::vector<Vector> sorted(std::vector<Vector> vs) {
  std::sort(vs.begin(), vs.end());
  return vs;
}

// --- monoids ---------------------------------------------------------------

inline Json to_json(AffineMonoid const& m) {
  return {{"ambient_rank", m.ambient_rank()}, {"generators", to_json(m.generators())}};
}

inline AffineMonoid monoid_from_json(Json const& j) {
  return AffineMonoid(count_from_json(detail::field(j, "ambient_rank"), "ambient_rank"),
                      vectors_from_json(detail::field(j, "generators")));
}

inline Json to_json(MonoidPresentation const& p) {
  Json rels = Json::array();
  for (auto const& r : p.relations()) rels.push_back({{"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}});
  return {{"num_generators", p.num_generators()}, {"relations", rels}};
}

inline MonoidPresentation presentation_from_json(Json const& j) {
  std::vector<Relation> rels;
  for (auto const& r : detail::array(detail::field(j, "relations"), "relations"))
    rels.push_back({vector_from_json(detail::field(r, "lhs")), vector_from_json(detail::field(r, "rhs"))});
  return MonoidPresentation(count_from_json(detail::field(j, "num_generators"), "num_generators"),
                            std::move(rels));
}

inline bool is_presentation(Json const& j) { return j.is_object() && j.contains("num_generators"); }

inline Json to_json(MonoidHom const& h) {
  Json src = h.has_monoid_source() ? to_json(h.source_monoid())
                                   : to_json(std::get<MonoidPresentation>(h.source()));
  return {{"source", src}, {"target", to_json(h.target())}, {"images", to_json(h.images())}};
}

inline MonoidHom hom_from_json(Json const& j) {
  Json const& src = detail::field(j, "source");
  MonoidHom::Source source = is_presentation(src) ? MonoidHom::Source(presentation_from_json(src))
                                                  : MonoidHom::Source(monoid_from_json(src));
  return MonoidHom(std::move(source), monoid_from_json(detail::field(j, "target")),
                   vectors_from_json(detail::field(j, "images")));
}

// --- limits ----------------------------------------------------------------

inline Json to_json(PushoutResult const& p) {
  return {{"apex", to_json(p.apex)}, {"from_P", to_json(p.from_P)}, {"from_R", to_json(p.from_R)}};
}

inline PushoutResult pushout_from_json(Json const& j) {
  return {monoid_from_json(detail::field(j, "apex")), hom_from_json(detail::field(j, "from_P")),
          hom_from_json(detail::field(j, "from_R"))};
}

inline Json to_json(CoequalizerInput const& c) {
  return {{"n1", c.n1}, {"n2", c.n2}, {"v1", to_json(c.v1.columns())}, {"v2", to_json(c.v2.columns())}};
}

inline CoequalizerInput coequalizer_from_json(Json const& j) {
  std::size_t n1 = count_from_json(detail::field(j, "n1"), "n1");
  std::size_t n2 = count_from_json(detail::field(j, "n2"), "n2");
  auto matrix = [&](char const* key) {
    auto cols = vectors_from_json(detail::field(j, key));
    if (cols.size() != n2) throw ParseError(std::string(key) + " must have n2 columns");
    for (auto const& c : cols)
      if (c.size() != n1) throw ParseError(std::string(key) + " columns must have length n1");
    return Matrix::from_columns(cols, n1);
  };
  return CoequalizerInput(n1, n2, matrix("v1"), matrix("v2"));
}

// --- graphs ----------------------------------------------------------------

inline Json to_json(MarkedGraph const& g) {
  Json vs = Json::array(), es = Json::array(), ls = Json::array();
  for (auto const& v : g.vertices()) {
    Json deg = Json::array();
    for (bool b : v.degenerate) deg.push_back(b);
    vs.push_back({{"id", v.id}, {"degenerate", deg}});
  }
  for (auto const& e : g.edges()) {
    Json orient = Json::array();
    for (auto const& o : e.orientation) orient.push_back(o ? Json::array({o->first, o->second}) : Json(nullptr));
    es.push_back({{"id", e.id},
                  {"ends", Json::array({e.ends.first, e.ends.second})},
                  {"contact", to_json(Vector(e.contact))},
                  {"orientation", orient}});
  }
  for (auto const& l : g.legs()) ls.push_back({{"vertex", l.vertex}, {"contact", to_json(Vector(l.contact))}});
  return {{"num_indices", g.num_indices()}, {"vertices", vs}, {"edges", es}, {"legs", ls}};
}

inline MarkedGraph graph_from_json(Json const& j) {
  auto str = [](Json const& x, char const* what) {
    if (!x.is_string()) throw ParseError(std::string(what) + " must be a string");
    return x.get<std::string>();
  };
  auto pair = [&](Json const& x, char const* what) {
    if (!x.is_array() || x.size() != 2) throw ParseError(std::string(what) + " must be a pair of vertex ids");
    return std::pair{str(x[0], what), str(x[1], what)};
  };
  std::size_t k = count_from_json(detail::field(j, "num_indices"), "num_indices");
  std::vector<GraphVertex> vs;
  for (auto const& v : detail::array(detail::field(j, "vertices"), "vertices")) {
    GraphVertex x{str(detail::field(v, "id"), "vertex id"), {}};
    for (auto const& b : detail::array(detail::field(v, "degenerate"), "degenerate")) {
      if (!b.is_boolean()) throw ParseError("degenerate flags must be booleans");
      x.degenerate.push_back(b.get<bool>());
    }
    vs.push_back(std::move(x));
  }
  std::vector<GraphEdge> es;
  for (auto const& e : detail::array(detail::field(j, "edges"), "edges")) {
    GraphEdge x{str(detail::field(e, "id"), "edge id"), pair(detail::field(e, "ends"), "ends"), {}, {}};
    for (auto const& c : vector_from_json(detail::field(e, "contact"))) x.contact.push_back(c);
    for (auto const& o : detail::array(detail::field(e, "orientation"), "orientation")) {
      if (o.is_null()) {
        x.orientation.emplace_back();
      } else {
        x.orientation.emplace_back(pair(o, "orientation"));
      }
    }
    es.push_back(std::move(x));
  }
  std::vector<GraphLeg> ls;
  if (j.contains("legs"))
    for (auto const& l : detail::array(j["legs"], "legs")) {
      GraphLeg x{str(detail::field(l, "vertex"), "leg vertex"), {}};
      for (auto const& c : vector_from_json(detail::field(l, "contact"))) x.contact.push_back(c);
      ls.push_back(std::move(x));
    }
  return MarkedGraph(k, std::move(vs), std::move(es), std::move(ls));
}

inline Json to_json(BaseMonoidCandidate const& s) {
  Json edges = Json::object(), verts = Json::object();
  for (auto const& [id, p] : s.edge_params) edges[id] = to_json(p);
  for (auto const& [id, ps] : s.vertex_params) verts[id] = to_json(ps);
  return {{"monoid", to_json(s.monoid)}, {"edge_params", edges}, {"vertex_params", verts}};
}

inline BaseMonoidCandidate candidate_from_json(Json const& j) {
  BaseMonoidCandidate s{monoid_from_json(detail::field(j, "monoid")), {}, {}};
  Json const& edges = detail::field(j, "edge_params");
  Json const& verts = detail::field(j, "vertex_params");
  if (!edges.is_object() || !verts.is_object()) throw ParseError("parameters must be objects keyed by id");
  for (auto const& [id, p] : edges.items()) s.edge_params[id] = vector_from_json(p);
  for (auto const& [id, ps] : verts.items()) s.vertex_params[id] = vectors_from_json(ps);
  return s;
}

// Images of the graph generators, keyed by id.
inline Json images_json(GraphMonoid const& gm) {
  Json edges = Json::object(), verts = Json::object();
  auto const& g = gm.graph;
  for (std::size_t e = 0; e < g.edges().size(); ++e) edges[g.edges()[e].id] = to_json(gm.edge_image(e));
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    Json per = Json::array();
    for (std::size_t i = 0; i < g.num_indices(); ++i) per.push_back(to_json(gm.vertex_image(v, i)));
    verts[g.vertices()[v].id] = per;
  }
  return {{"edge_images", edges}, {"vertex_images", verts}};
}

// --- discrete data ---------------------------------------------------------

inline Json to_json(DiscreteData const& d) {
  Json rows = Json::array();
  for (auto const& r : d.contacts()) rows.push_back(to_json(Vector(r)));
  return {{"genus", to_json(d.genus())},
          {"num_marks", d.num_marks()},
          {"degrees", to_json(Vector(d.degrees()))},
          {"contacts", rows}};
}

inline DiscreteData discrete_data_from_json(Json const& j) {
  std::vector<std::vector<Integer>> rows;
  for (auto const& r : detail::array(detail::field(j, "contacts"), "contacts")) rows.push_back(vector_from_json(r));
  return DiscreteData(integer_from_json(detail::field(j, "genus")),
                      count_from_json(detail::field(j, "num_marks"), "num_marks"),
                      vector_from_json(detail::field(j, "degrees")), std::move(rows));
}

}  // namespace fslog::json
