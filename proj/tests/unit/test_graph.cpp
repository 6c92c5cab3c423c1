#include <doctest.h>

#include <string>

#include "specgrowth/errors.hpp"
#include "specgrowth/graph.hpp"
#include "specgrowth/graph_io.hpp"

using namespace specgrowth;

namespace {

template <class Fn>
std::string thrown_message(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

WeightedGraph triangle() {
  return build_from_parts(3, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 0, 0.5}}, {1.0, 2.0, 3.0}, {});
}

}  // namespace

TEST_CASE("adjacency is symmetric, id-sorted, and weight-correct") {
  WeightedGraph g = triangle();
  CHECK(g.n() == 3);
  CHECK(g.edges().size() == 3);
  auto nb = g.neighbors(1);
  REQUIRE(nb.size() == 2);
  CHECK(nb[0].to == 0);
  CHECK(nb[0].w == 1.0);
  CHECK(nb[1].to == 2);
  CHECK(nb[1].w == 2.0);
  CHECK(g.weighted_degree(0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(g.materialized_degree(0) == 2);
  CHECK(g.measure(2) == 3.0);
  CHECK(g.total_measure() == doctest::Approx(6.0));
  CHECK(g.connected());
  CHECK(!g.has_exterior());
  CHECK(g.boundary().empty());
}

TEST_CASE("edges are canonicalized to u < v") {
  WeightedGraph g = build_from_parts(2, {{1, 0, 3.0}}, {1.0, 1.0}, {});
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[0].w == 3.0);
}

TEST_CASE("duplicate edges are rejected naming both indices") {
  std::string msg = thrown_message([] {
    build_from_parts(3, {{0, 1, 1.0}, {1, 2, 1.0}, {1, 0, 2.0}}, {1.0, 1.0, 1.0}, {});
  });
  CHECK(msg.find("duplicate") != std::string::npos);
  CHECK(msg.find("0") != std::string::npos);
  CHECK(msg.find("2") != std::string::npos);
}

TEST_CASE("self loops, bad endpoints, and bad weights are rejected") {
  CHECK_THROWS_AS(build_from_parts(2, {{1, 1, 1.0}}, {1.0, 1.0}, {}), validation_error);
  CHECK_THROWS_AS(build_from_parts(2, {{0, 5, 1.0}}, {1.0, 1.0}, {}), validation_error);
  CHECK_THROWS_AS(build_from_parts(2, {{0, 1, 0.0}}, {1.0, 1.0}, {}), validation_error);
  CHECK_THROWS_AS(build_from_parts(2, {{0, 1, -1.0}}, {1.0, 1.0}, {}), validation_error);
}

TEST_CASE("measure must be positive and sized n, errors name the index") {
  std::string msg =
      thrown_message([] { build_from_parts(2, {{0, 1, 1.0}}, {1.0, 0.0}, {}); });
  CHECK(msg.find("measure") != std::string::npos);
  CHECK(msg.find("1") != std::string::npos);
  CHECK_THROWS_AS(build_from_parts(2, {{0, 1, 1.0}}, {1.0}, {}), validation_error);
}

TEST_CASE("disconnected graphs need the explicit flag") {
  std::string msg = thrown_message(
      [] { build_from_parts(3, {{0, 1, 1.0}}, {1.0, 1.0, 1.0}, {}); });
  CHECK(msg.find("2") != std::string::npos);  // the unreachable vertex

  BuildOptions opts;
  opts.allow_disconnected = true;
  WeightedGraph g = build_from_parts(3, {{0, 1, 1.0}}, {1.0, 1.0, 1.0}, opts);
  CHECK(!g.connected());
}

TEST_CASE("boundary and exterior weights are tracked") {
  BuildOptions opts;
  opts.boundary = {2, 1, 2};  // sorted and deduped on build
  opts.exterior = {0.0, 0.0, 5.0};
  WeightedGraph g = build_from_parts(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {1.0, 1.0, 1.0}, opts);
  CHECK(g.boundary() == std::vector<Vertex>{1, 2});
  CHECK(g.is_boundary(1));
  CHECK(!g.is_boundary(0));
  CHECK(g.has_exterior());
  CHECK(g.exterior_weight(2) == 5.0);
  // exterior counts toward the weighted degree but not the materialized one
  CHECK(g.weighted_degree(2) == doctest::Approx(6.0));
  CHECK(g.materialized_degree(2) == 1);
  CHECK(g.generalized_degree(2) == doctest::Approx(6.0));

  BuildOptions bad;
  bad.exterior = {0.0, -1.0, 0.0};
  CHECK_THROWS_AS(build_from_parts(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {1.0, 1.0, 1.0}, bad),
                  validation_error);
}

TEST_CASE("an all-zero exterior array is dropped") {
  BuildOptions opts;
  opts.exterior = {0.0, 0.0};
  WeightedGraph g = build_from_parts(2, {{0, 1, 1.0}}, {1.0, 1.0}, opts);
  CHECK(!g.has_exterior());
}

TEST_CASE("resource caps reject oversized inputs with counts in the message") {
  BuildOptions opts;
  opts.caps = ResourceCaps{2, 100};
  std::string msg = thrown_message(
      [&] { build_from_parts(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {1.0, 1.0, 1.0}, opts); });
  CHECK(msg.find("3") != std::string::npos);
  CHECK(msg.find("2") != std::string::npos);
  try {
    build_from_parts(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {1.0, 1.0, 1.0}, opts);
    CHECK(false);
  } catch (const resource_error& e) {
    CHECK(e.vertices == 3);
  }
}

TEST_CASE("graph JSON round trip preserves everything") {
  BuildOptions opts;
  opts.boundary = {2};
  opts.exterior = {0.0, 0.0, 2.5};
  WeightedGraph g =
      build_from_parts(3, {{0, 1, 1.5}, {1, 2, 1.0}}, {1.0, 2.0, 0.5}, opts);
  std::string text = graph_to_json(g);
  WeightedGraph back = parse_graph_json(text);
  CHECK(back.n() == 3);
  CHECK(back.edges().size() == 2);
  CHECK(back.edges()[0].w == 1.5);
  CHECK(back.measure(1) == 2.0);
  CHECK(back.boundary() == std::vector<Vertex>{2});
  CHECK(back.exterior_weight(2) == 2.5);
  CHECK(graph_to_json(back) == text);  // serialization is deterministic
}

TEST_CASE("graph JSON parse errors are positional") {
  CHECK(thrown_message([] { parse_graph_json("not json"); }).find("not valid JSON") !=
        std::string::npos);
  CHECK(thrown_message([] { parse_graph_json("[1,2]"); }).find("object") !=
        std::string::npos);
  std::string unknown = thrown_message(
      [] { parse_graph_json(R"({"n":1,"measure":[1.0],"edges":[],"extra":0})"); });
  CHECK(unknown.find("extra") != std::string::npos);
  std::string bad_edge = thrown_message([] {
    parse_graph_json(R"({"n":2,"measure":[1.0,1.0],"edges":[[0,1,1.0],[0]]})");
  });
  CHECK(bad_edge.find("edges[1]") != std::string::npos);
  std::string bad_measure = thrown_message(
      [] { parse_graph_json(R"({"n":2,"measure":[1.0,"x"],"edges":[[0,1]]})"); });
  CHECK(bad_measure.find("measure[1]") != std::string::npos);
}

TEST_CASE("edges without a weight default to 1") {
  WeightedGraph g = parse_graph_json(R"({"n":2,"measure":[1.0,1.0],"edges":[[0,1]]})");
  CHECK(g.edges()[0].w == 1.0);
}

TEST_CASE("load_graph reports an unopenable path") {
  CHECK(thrown_message([] { load_graph("/nonexistent/graph.json"); }).find("cannot open") !=
        std::string::npos);
}
