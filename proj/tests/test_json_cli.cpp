#include "cli.hpp"
#include "support/corpus.hpp"
#include "support/random_graphs.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace fslog;
using fslog::json::Json;

namespace {

std::string const data_dir = FSLOG_TEST_DATA_DIR;

AffineMonoid random_monoid(std::mt19937& rng) {
  std::uniform_int_distribution<int> rk(1, 3), ng(1, 5), coord(-4, 4);
  std::size_t r = rk(rng), n = ng(rng);
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Vector g(r);
    for (auto& x : g) x = coord(rng);
    gens.push_back(g);
  }
  return AffineMonoid(r, gens);
}

// serialize, parse, serialize again: the two texts must agree.
template <class T, class Parse>
void round_trip(T const& x, Parse parse) {
  std::string once = json::to_json(x).dump();
  std::string twice = json::to_json(parse(Json::parse(once))).dump();
  CHECK(once == twice);
}

int run(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  for (std::size_t i = 1; i < args.size(); ++i)
    if (!args[i].starts_with("--")) args[i] = data_dir + "/" + args[i];
  std::ostringstream o, e;
  int code = cli::run(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

}  // namespace

TEST_CASE("integers switch to strings at 2^53", "[json]") {
  Integer edge = (Integer(1) << 53) - 1;
  CHECK(json::to_json(edge).is_number_integer());
  CHECK(json::to_json(Integer(edge + 1)).is_string());
  CHECK(json::to_json(Integer(-edge)).is_number_integer());
  CHECK(json::to_json(Integer(-edge - 1)) == Json("-9007199254740992"));
  CHECK(json::integer_from_json(Json("123456789012345678901234567890")) ==
        Integer("123456789012345678901234567890"));
  CHECK(json::integer_from_json(Json(-7)) == -7);
  CHECK(json::integer_from_json(Json("-7")) == -7);
  CHECK_THROWS_AS(json::integer_from_json(Json("7a")), json::ParseError);
  CHECK_THROWS_AS(json::integer_from_json(Json("")), json::ParseError);
  CHECK_THROWS_AS(json::integer_from_json(Json(1.5)), json::ParseError);
  CHECK_THROWS_AS(json::integer_from_json(Json(true)), json::ParseError);
}

TEST_CASE("parsers reject malformed objects", "[json]") {
  CHECK_THROWS_AS(json::monoid_from_json(Json::parse(R"({"generators": [[1]]})")), json::ParseError);
  CHECK_THROWS_AS(json::monoid_from_json(Json::parse(R"({"ambient_rank": 1, "generators": [1]})")),
                  json::ParseError);
  CHECK_THROWS_AS(json::coequalizer_from_json(Json::parse(R"({"n1": 2, "n2": 1, "v1": [], "v2": [[0, 1]]})")),
                  json::ParseError);
  CHECK_THROWS_AS(json::graph_from_json(Json::parse(R"({"num_indices": 1, "vertices": [{"id": 3, "degenerate": [true]}], "edges": []})")),
                  json::ParseError);
  // Shape errors inside well-formed JSON are domain errors.
  CHECK_THROWS_AS(json::monoid_from_json(Json::parse(R"({"ambient_rank": 2, "generators": [[1]]})")), Error);
}

TEST_CASE("round trips on every core type", "[json][property]") {
  std::mt19937 rng(91);
  for (int i = 0; i < 60; ++i) round_trip(random_monoid(rng), json::monoid_from_json);

  MonoidPresentation p(3, {{make_vector({1, 1, 0}), make_vector({0, 0, 2})}});
  round_trip(p, json::presentation_from_json);

  AffineMonoid big(1, {Vector{Integer("100000000000000000000")}});
  round_trip(big, json::monoid_from_json);
  CHECK(json::to_json(big)["generators"][0][0].is_string());

  for (int i = 0; i < 30; ++i) {
    std::uniform_int_distribution<int> n1d(1, 4), n2d(0, 2), ent(0, 3);
    std::size_t n1 = n1d(rng), n2 = n2d(rng);
    Matrix v1(n1, n2), v2(n1, n2);
    for (std::size_t r = 0; r < n1; ++r)
      for (std::size_t c = 0; c < n2; ++c) {
        v1(r, c) = ent(rng);
        v2(r, c) = ent(rng);
      }
    CoequalizerInput inp(n1, n2, v1, v2);
    round_trip(inp, json::coequalizer_from_json);
    auto po = pushout_fs(coequalizer_span(inp).u, coequalizer_span(inp).v);
    round_trip(po, json::pushout_from_json);
    round_trip(po.from_P, json::hom_from_json);
  }

  fslog::testing::GraphShape shape;
  for (int i = 0; i < 40; ++i) {
    auto g = fslog::testing::random_graph(rng, shape);
    round_trip(g, json::graph_from_json);
  }
  for (int i = 0; i < 20; ++i) {
    auto gm = fslog::testing::random_consistent_graph(rng, shape, true);
    round_trip(canonical_candidate(gm), json::candidate_from_json);
  }

  std::uniform_int_distribution<int> small(0, 5);
  for (int i = 0; i < 40; ++i) {
    std::size_t n = small(rng) % 4, k = small(rng) % 3;
    std::vector<std::vector<Integer>> rows(n, std::vector<Integer>(k));
    std::vector<Integer> deg(k);
    for (auto& r : rows)
      for (auto& x : r) x = small(rng);
    for (auto& x : deg) x = small(rng);
    round_trip(DiscreteData(small(rng), n, deg, rows), json::discrete_data_from_json);
  }
}

TEST_CASE("parse of serialize is the identity", "[json]") {
  MarkedGraph g(2, {{"b", {true, false}}, {"a", {true, true}}},
                {{"e", {"a", "b"}, {Integer(1), Integer(0)}, {std::pair<std::string, std::string>{"a", "b"}, std::nullopt}}},
                {{"a", {Integer(1), Integer(0)}}});
  auto back = json::graph_from_json(json::to_json(g));
  CHECK(back.vertices().front().id == "a");
  CHECK(json::to_json(back) == json::to_json(g));
  CHECK(graph_presentation(back) == graph_presentation(g));

  DiscreteData d(1, 2, {Integer(2)}, {{Integer(1)}, {Integer(1)}});
  CHECK(json::discrete_data_from_json(json::to_json(d)) == d);
}

TEST_CASE("cross_check_legs", "[cli]") {
  auto g = json::graph_from_json(cli::detail::read_json(data_dir + "/graph_23_legs.json"));
  auto same = json::discrete_data_from_json(cli::detail::read_json(data_dir + "/gamma_123.json"));
  auto permuted = json::discrete_data_from_json(cli::detail::read_json(data_dir + "/gamma_321.json"));
  CHECK(cli::cross_check_legs(g, same));
  CHECK_FALSE(cli::cross_check_legs(g, permuted));
  DiscreteData two(0, 2, {Integer(3)}, {{Integer(1)}, {Integer(2)}});
  CHECK_THROWS_MATCHES(cli::cross_check_legs(g, two), Error,
                       Catch::Matchers::Predicate<Error>([](Error const& e) {
                         return e.code() == ErrorCode::DimensionMismatch;
                       }));
  DiscreteData wide(0, 3, {Integer(1), Integer(2)}, {{Integer(1), Integer(0)}, {Integer(0), Integer(2)}, {Integer(0), Integer(0)}});
  CHECK_THROWS_AS(cli::cross_check_legs(g, wide), Error);
}

TEST_CASE("corpus exit codes and pinned outputs", "[cli]") {
  for (auto const& c : fslog::testing::load_corpus(data_dir)) {
    INFO(fslog::testing::describe(c));
    auto r = fslog::testing::run_case(c, data_dir);
    CHECK(r.exit == c.expected_exit);
    if (c.expected_stdout) CHECK(r.out == *c.expected_stdout);
    if (r.exit == 2) CHECK(r.out.empty());
    if (r.exit == 1 && !r.out.empty()) {
      auto j = Json::parse(r.out);
      CHECK(j.contains("error"));
      CHECK(j.contains("detail"));
    }
  }
}

TEST_CASE("command outputs", "[cli]") {
  std::string out, err;
  SECTION("text rendering") {
    REQUIRE(run({"graph-monoid", "graph_23.json", "--text"}, &out) == 0);
    CHECK(out ==
          "edge_images:\n  l1: (3)\n  l2: (2)\nmonoid:\n  ambient_rank: 1\n  generators: [(1)]\n"
          "vertex_images:\n  v: [(0)]\n  w: [(6)]\n");
  }
  SECTION("oracle reports on stderr and leaves stdout alone") {
    std::string plain;
    REQUIRE(run({"saturate", "m_gaps.json"}, &plain) == 0);
    REQUIRE(run({"saturate", "m_gaps.json", "--oracle"}, &out, &err) == 0);
    CHECK(out == plain);
    CHECK(err.starts_with("oracle: agrees"));
    REQUIRE(run({"saturate", "m_huge.json", "--oracle"}, &out, &err) == 0);
    CHECK(err.starts_with("oracle: skipped"));
  }
  SECTION("coequalizer of the square relation is the square cone") {
    REQUIRE(run({"coeq", "coeq_square.json"}, &out) == 0);
    auto j = Json::parse(out);
    CHECK(iso_check(json::monoid_from_json(j["apex"]), json::monoid_from_json(cli::detail::read_json(data_dir + "/m_square.json"))));
    CHECK(j["images"].size() == 3);
  }
  SECTION("pushout structure maps") {
    REQUIRE(run({"pushout", "hom_double.json", "hom_id.json"}, &out) == 0);
    auto po = json::pushout_from_json(Json::parse(out));
    CHECK(po.apex == AffineMonoid::free(1));
    CHECK(po.from_P.images() == std::vector<Vector>{make_vector({1})});
    CHECK(po.from_R.images() == std::vector<Vector>{make_vector({2})});
  }
  SECTION("gdf-monoid over the square cone") {
    REQUIRE(run({"gdf-monoid", "coeq_square.json", "graph_point3.json"}, &out) == 0);
    auto j = Json::parse(out);
    CHECK(iso_check(json::monoid_from_json(j["monoid"]), json::monoid_from_json(cli::detail::read_json(data_dir + "/m_square.json"))));
    CHECK(j["vertex_images"]["v"].size() == 3);
  }
  SECTION("help") {
    CHECK(run({"--help"}, &out) == 0);
    CHECK(out.find("Usage") != std::string::npos);
  }
  SECTION("no arguments") { CHECK(run({}, &out, &err) == 2); }
}

TEST_CASE("corpus output is deterministic", "[cli][determinism]") {
  auto cases = fslog::testing::load_corpus(data_dir);
  for (auto const& c : cases) {
    INFO(fslog::testing::describe(c));
    auto a = fslog::testing::run_case(c, data_dir);
    auto b = fslog::testing::run_case(c, data_dir);
    CHECK(a.exit == b.exit);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}
