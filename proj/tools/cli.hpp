#pragma once

// fslog <command> [files...] [--text] [--oracle]
//
// Exit status: 0 on success, 1 on a domain error (reported on stdout as
// {"error": ..., "detail": ...}) or an oracle disagreement, 2 on a usage or
// input-format error.

#include "fslog/discrete_data.hpp"
#include "fslog/fs_limits.hpp"
#include "fslog/hom.hpp"
#include "fslog/json_io.hpp"
#include "fslog/marked_graph.hpp"
#include "fslog/monoid.hpp"
#include "fslog/oracle.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace fslog::cli {

using json::Json;

// Leg contact vectors equal the rows of the discrete data, in order.
inline bool cross_check_legs(MarkedGraph const& g, DiscreteData const& d) {
  if (g.legs().size() != d.num_marks())
    throw Error(ErrorCode::DimensionMismatch, "graph has " + std::to_string(g.legs().size()) + " legs, data has " +
                                                  std::to_string(d.num_marks()) + " markings");
  if (g.num_indices() != d.num_indices())
    throw Error(ErrorCode::DimensionMismatch, "graph and data disagree on the number of indices");
  for (std::size_t j = 0; j < d.num_marks(); ++j)
    if (g.legs()[j].contact != d.contacts()[j]) return false;
  return true;
}

namespace detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json read_json(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (Json::parse_error const& e) {
    throw json::ParseError(path + ": " + e.what());
  }
}

// One line per field; integer vectors as (a,b,...).
inline void render_text(Json const& j, std::ostream& out, std::string const& indent);

inline std::string compact(Json const& j) {
  if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](Json const& x) { return !x.is_array() && !x.is_object(); });
    std::string s = flat ? "(" : "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? (flat ? "," : ", ") : "") + compact(j[i]);
    return s + (flat ? ")" : "]");
  }
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

inline bool is_leaf(Json const& j) {
  if (j.is_object()) return false;
  if (j.is_array())
    return std::all_of(j.begin(), j.end(), [](Json const& x) { return !x.is_object(); });
  return true;
}

inline void render_text(Json const& j, std::ostream& out, std::string const& indent) {
  if (!j.is_object()) {
    out << indent << compact(j) << "\n";
    return;
  }
  for (auto const& [key, value] : j.items()) {
    if (is_leaf(value)) {
      out << indent << key << ": " << compact(value) << "\n";
    } else if (value.is_array()) {
      out << indent << key << ":\n";
      for (auto const& item : value) {
        out << indent << "  -\n";
        render_text(item, out, indent + "    ");
      }
    } else {
      out << indent << key << ":\n";
      render_text(value, out, indent + "  ");
    }
  }
}

struct Context {
  std::vector<Json> inputs;
  bool oracle = false;
  std::ostream* err = nullptr;
};

// Brute-force check that `saturation` is the Hilbert basis of the saturation
// of `m`, when m is small enough to enumerate.
inline void oracle_saturation(Context const& ctx, AffineMonoid const& m, std::vector<Vector> const& saturation) {
  if (!ctx.oracle) return;
  if (!oracle::fits_desk_scale(m) || !m.is_sharp()) {
    *ctx.err << "oracle: skipped (input outside the brute-force range)\n";
    return;
  }
  auto rep = oracle::verify_hilbert_basis(m, saturation, 12);
  if (!rep.ok) throw OracleMismatch(rep.message);
  *ctx.err << "oracle: agrees on " << rep.lattice_points << " lattice points\n";
}

inline void no_oracle(Context const& ctx, std::string const& cmd) {
  if (ctx.oracle) *ctx.err << "oracle: no brute-force verifier for " << cmd << "\n";
}

// Generators as listed in the file, with the column permutation onto the
// canonical (sorted) order.
inline std::vector<std::size_t> file_order(Json const& j, AffineMonoid const& m) {
  auto listed = json::vectors_from_json(json::detail::field(j, "generators"));
  if (listed.size() != m.generators().size())
    throw Error(ErrorCode::DimensionMismatch, "generator list must be free of zeros and repeats to index data");
  std::vector<std::size_t> perm;
  for (auto const& g : m.generators())
    perm.push_back(static_cast<std::size_t>(std::find(listed.begin(), listed.end(), g) - listed.begin()));
  return perm;
}

using Handler = std::function<Json(Context const&)>;

struct Command {
  std::size_t min_files;
  std::size_t max_files;
  Handler run;
};

inline std::map<std::string, Command> const& commands() {
  using namespace json;
  static std::map<std::string, Command> const table = {
      {"saturate",
       {1, 1,
        [](Context const& c) {
          auto m = monoid_from_json(c.inputs[0]);
          auto sat = saturate(m);
          oracle_saturation(c, m, sat.generators());
          return to_json(sat);
        }}},
      {"hilbert",
       {1, 1,
        [](Context const& c) {
          auto m = monoid_from_json(c.inputs[0]);
          auto hb = hilbert_basis(m);
          oracle_saturation(c, m, hb);
          return Json{{"hilbert_basis", to_json(hb)}};
        }}},
      {"irr",
       {1, 1,
        [](Context const& c) {
          no_oracle(c, "irr");
          return Json{{"irreducibles", to_json(irreducibles(monoid_from_json(c.inputs[0])))}};
        }}},
      {"sharp",
       {1, 1,
        [](Context const& c) {
          no_oracle(c, "sharp");
          auto m = monoid_from_json(c.inputs[0]);
          bool sharp = m.is_sharp();
          return Json{{"sharp", sharp}, {"sharpened", to_json(sharp ? m : sharpen(saturate(m)).monoid)}};
        }}},
      {"iso",
       {2, 2,
        [](Context const& c) {
          no_oracle(c, "iso");
          auto h = iso_check(monoid_from_json(c.inputs[0]), monoid_from_json(c.inputs[1]));
          return Json{{"isomorphic", h.has_value()}, {"images", h ? to_json(h->images()) : Json(nullptr)}};
        }}},
      {"pushout",
       {2, 2,
        [](Context const& c) {
          auto po = pushout_fs(hom_from_json(c.inputs[0]), hom_from_json(c.inputs[1]));
          std::vector<Vector> images = po.from_P.images();
          images.insert(images.end(), po.from_R.images().begin(), po.from_R.images().end());
          oracle_saturation(c, AffineMonoid(po.apex.ambient_rank(), images), po.apex.generators());
          return to_json(po);
        }}},
      {"coeq",
       {1, 1,
        [](Context const& c) {
          auto inp = coequalizer_from_json(c.inputs[0]);
          auto res = coequalizer_fs(inp);
          std::vector<Vector> images;
          for (std::size_t i = 0; i < inp.n1; ++i) images.push_back(res.q.apply(unit_vector(inp.n1, i)));
          oracle_saturation(c, AffineMonoid(res.apex.ambient_rank(), images), res.apex.generators());
          return Json{{"apex", to_json(res.apex)}, {"images", to_json(images)}};
        }}},
      {"verify-square",
       {1, 3,
        [](Context const& c) {
          no_oracle(c, "verify-square");
          if (c.inputs.size() == 1) {
            auto inp = coequalizer_from_json(c.inputs[0]);
            auto span = coequalizer_span(inp);
            return Json{{"pushout", verify_pushout_square(span.u, span.v, coequalizer_cone(inp, coequalizer_fs(inp)))}};
          }
          if (c.inputs.size() != 3) throw UsageError("verify-square takes a coequalizer, or u v claimed");
          return Json{{"pushout", verify_pushout_square(hom_from_json(c.inputs[0]), hom_from_json(c.inputs[1]),
                                                        pushout_from_json(c.inputs[2]))}};
        }}},
      {"graph-monoid",
       {1, 1,
        [](Context const& c) {
          auto gm = minimal_monoid(graph_from_json(c.inputs[0]));
          oracle_saturation(c, AffineMonoid(gm.monoid.ambient_rank(), gm.generator_images), gm.monoid.generators());
          Json out = images_json(gm);
          out["monoid"] = to_json(gm.monoid);
          return out;
        }}},
      {"check-minimal",
       {2, 2,
        [](Context const& c) {
          no_oracle(c, "check-minimal");
          auto h = canonical_map(graph_from_json(c.inputs[0]), candidate_from_json(c.inputs[1]));
          return Json{{"minimal", is_isomorphism(h)}, {"map", to_json(h)}};
        }}},
      {"gdf-monoid",
       {2, 2,
        [](Context const& c) {
          no_oracle(c, "gdf-monoid");
          auto gm = minimal_monoid_generalized(coequalizer_from_json(c.inputs[0]), graph_from_json(c.inputs[1]));
          auto s = canonical_candidate(gm);
          return Json{{"monoid", to_json(gm.monoid())},
                      {"edge_images", to_json(s)["edge_params"]},
                      {"vertex_images", to_json(s)["vertex_params"]}};
        }}},
      {"gdf-check",
       {3, 3,
        [](Context const& c) {
          no_oracle(c, "gdf-check");
          return Json{{"minimal", check_minimal_generalized(coequalizer_from_json(c.inputs[0]),
                                                            graph_from_json(c.inputs[1]),
                                                            candidate_from_json(c.inputs[2]))}};
        }}},
      {"gamma-check",
       {1, 3,
        [](Context const& c) {
          no_oracle(c, "gamma-check");
          auto d = discrete_data_from_json(c.inputs[0]);
          Json out{{"valid", validate(d)}};
          for (std::size_t f = 1; f < c.inputs.size(); ++f) {
            Json const& j = c.inputs[f];
            if (j.is_object() && j.contains("ambient_rank")) {
              auto p = monoid_from_json(j);
              auto perm = file_order(j, p);
              if (d.num_indices() != perm.size())
                throw Error(ErrorCode::DimensionMismatch, "data columns do not match the generators of P");
              std::vector<Integer> degrees;
              for (std::size_t t : perm) degrees.push_back(d.degrees()[t]);
              std::vector<std::vector<Integer>> rows;
              for (auto const& r : d.contacts()) {
                std::vector<Integer> row;
                for (std::size_t t : perm) row.push_back(r[t]);
                rows.push_back(std::move(row));
              }
              auto reduced = irr_indexed(p, DiscreteData(d.genus(), d.num_marks(), degrees, rows));
              out["irr_indexed"] = to_json(reduced);
              out["irreducibles"] = to_json(irreducibles(p));
            } else if (j.is_object() && j.contains("num_indices")) {
              out["legs_match"] = cross_check_legs(graph_from_json(j), d);
            } else {
              throw UsageError("gamma-check: extra inputs must be a monoid or a marked graph");
            }
          }
          return out;
        }}},
  };
  return table;
}

}  // namespace detail

inline int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fine saturated monoids, marked graphs and minimal log structures"};
  app.name("fslog");
  std::string command;
  std::vector<std::string> files;
  bool text = false, use_oracle = false;
  std::vector<std::string> names;
  for (auto const& [name, cmd] : detail::commands()) names.push_back(name);
  app.add_option("command", command, "operation to run")->required()->check(CLI::IsMember(names));
  app.add_option("files", files, "JSON inputs");
  app.add_flag("--text", text, "human-readable output");
  app.add_flag("--oracle", use_oracle, "also run the brute-force verifier where one exists");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return 0;
  } catch (CLI::ParseError const& e) {
    err << "fslog: " << e.what() << "\n" << app.help();
    return 2;
  }

  auto const& cmd = detail::commands().at(command);
  if (files.size() < cmd.min_files || files.size() > cmd.max_files) {
    err << "fslog: " << command << " takes " << cmd.min_files
        << (cmd.max_files > cmd.min_files ? "-" + std::to_string(cmd.max_files) : "") << " input file(s)\n";
    return 2;
  }

  try {
    detail::Context ctx{{}, use_oracle, &err};
    for (auto const& f : files) ctx.inputs.push_back(detail::read_json(f));
    Json result = cmd.run(ctx);
    if (text) {
      detail::render_text(result, out, "");
    } else {
      out << result.dump() << "\n";
    }
    return 0;
  } catch (Error const& e) {
    out << Json{{"error", error_name(e.code())}, {"detail", e.detail()}}.dump() << "\n";
    return 1;
  } catch (detail::OracleMismatch const& e) {
    out << Json{{"error", "OracleMismatch"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  } catch (detail::UsageError const& e) {
    err << "fslog: " << e.what() << "\n";
    return 2;
  } catch (json::ParseError const& e) {
    err << "fslog: " << e.what() << "\n";
    return 2;
  } catch (Json::exception const& e) {
    err << "fslog: malformed input: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fslog::cli
