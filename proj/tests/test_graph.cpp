#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "netscale/graph.hpp"
#include "support/generators.hpp"

using namespace netscale;
namespace ts = testsupport;

TEST_CASE("parse_edge_list basics") {
  SECTION("path of three") {
    std::istringstream in("0 1\n1 2\n");
    const ParseResult r = parse_edge_list(in);
    CHECK(r.graph.vertex_count() == 3);
    CHECK(r.graph.edge_count() == 2);
    CHECK(r.graph.degree(0) == 1);
    CHECK(r.graph.degree(1) == 2);
    CHECK(r.graph.degree(2) == 1);
  }

  SECTION("self-loops dropped, dense remap preserves first appearance") {
    std::istringstream in("# c\n5 5\n5 6\n");
    const ParseResult r = parse_edge_list(in);
    CHECK(r.graph.vertex_count() == 2);
    CHECK(r.graph.edge_count() == 1);
    CHECK(r.self_loops_dropped == 1);
    CHECK(r.vertex_ids == std::vector<std::int64_t>{5, 6});
  }

  SECTION("duplicates collapse by default, kept with dedupe off") {
    std::istringstream in1("1 2\n2 1\n1 2\n");
    CHECK(parse_edge_list(in1).graph.edge_count() == 1);
    std::istringstream in2("1 2\n2 1\n1 2\n");
    CHECK(parse_edge_list(in2, false).graph.edge_count() == 3);
  }

  SECTION("malformed lines and empty input") {
    std::istringstream bad("0 1 2\n");
    CHECK_THROWS_AS(parse_edge_list(bad), ParseError);
    std::istringstream one("0\n");
    CHECK_THROWS_AS(parse_edge_list(one), ParseError);
    std::istringstream junk("0 x\n");
    CHECK_THROWS_AS(parse_edge_list(junk), ParseError);
    std::istringstream empty("# only comments\n\n");
    CHECK_THROWS_AS(parse_edge_list(empty), ParseError);
  }

  SECTION("line number in error message") {
    std::istringstream in("0 1\n\n0 1 2\n");
    try {
      parse_edge_list(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
}

TEST_CASE("graph invariants") {
  CHECK_THROWS_AS(Graph(2, {{0, 0}}), Error);   // self-loop
  CHECK_THROWS_AS(Graph(2, {{0, 5}}), Error);   // out of range

  // parallel edges respected in degree and adjacency
  const Graph g(2, {{0, 1}, {0, 1}});
  CHECK(g.degree(0) == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.neighbors(0).size() == 2);
}

TEST_CASE("degree sum equals 2m on random graphs") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::uint32_t>(4 + rng.below(30));
    const auto m = static_cast<std::uint32_t>(rng.below(2 * n));
    const Graph g = ts::gnm_graph(n, std::min(m, n * (n - 1) / 2), rng);
    std::uint64_t total = 0;
    for (std::uint32_t v = 0; v < n; ++v) total += g.degree(v);
    CHECK(total == 2 * g.edge_count());
  }
}

TEST_CASE("degree_stats") {
  SECTION("3-cycle") {
    const DegreeStats s = degree_stats(ts::cycle_graph(3));
    CHECK(s.avg_degree == 2.0);
    CHECK(s.avg_sq_degree == 4.0);
  }
  SECTION("star K_{1,3}") {
    const DegreeStats s = degree_stats(ts::star_graph(3));
    CHECK(s.avg_degree == 1.5);
    CHECK(s.avg_sq_degree == 3.0);
    CHECK(s.degree_histogram.at(1) == 3);
    CHECK(s.degree_histogram.at(3) == 1);
  }
  SECTION("histogram sums to n; Jensen") {
    Rng rng(5);
    const Graph g = ts::gnm_graph(25, 40, rng);
    const DegreeStats s = degree_stats(g);
    std::uint64_t total = 0;
    for (const auto& [d, c] : s.degree_histogram) total += c;
    CHECK(total == s.n);
    CHECK(s.avg_sq_degree >= s.avg_degree * s.avg_degree);
  }
}

TEST_CASE("is_connected") {
  CHECK(is_connected(ts::path_graph(3)));
  CHECK_FALSE(is_connected(Graph(4, {{0, 1}, {2, 3}})));
  CHECK(is_connected(Graph(1, {})));

  SECTION("agrees with union-find oracle") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto n = static_cast<std::uint32_t>(2 + rng.below(12));
      const auto max_m = n * (n - 1) / 2;
      const Graph g = ts::gnm_graph(n, static_cast<std::uint32_t>(rng.below(max_m + 1)), rng);
      CHECK(is_connected(g) == ts::connected_union_find(g));
    }
  }
}

TEST_CASE("induced_subgraph") {
  SECTION("triangle restricted to an edge") {
    const Graph sub = induced_subgraph(ts::cycle_graph(3), std::vector<std::uint32_t>{0, 1});
    CHECK(sub.vertex_count() == 2);
    CHECK(sub.edge_count() == 1);
  }
  SECTION("parallel edges preserved") {
    const Graph g(2, {{0, 1}, {0, 1}});
    const Graph sub = induced_subgraph(g, std::vector<std::uint32_t>{0, 1});
    CHECK(sub.edge_count() == 2);
  }
  SECTION("middle of a 5-path") {
    const Graph sub =
        induced_subgraph(ts::path_graph(5), std::vector<std::uint32_t>{1, 2, 3});
    CHECK(sub.vertex_count() == 3);
    CHECK(sub.edge_count() == 2);
    CHECK(sub.degree(1) == 2);  // position renumbering: middle stays middle
  }
  SECTION("identity order reproduces the graph") {
    Rng rng(11);
    const Graph g = ts::gnm_graph(15, 30, rng);
    std::vector<std::uint32_t> all(g.vertex_count());
    std::iota(all.begin(), all.end(), 0u);
    const Graph sub = induced_subgraph(g, all);
    CHECK(ts::edge_multiset(sub) == ts::edge_multiset(g));
  }
  SECTION("errors") {
    CHECK_THROWS_AS(induced_subgraph(ts::path_graph(3), std::vector<std::uint32_t>{0, 0}),
                    Error);
    CHECK_THROWS_AS(induced_subgraph(ts::path_graph(3), std::vector<std::uint32_t>{0, 9}),
                    Error);
  }
}

TEST_CASE("binary graph round trip") {
  Rng rng(13);
  const Graph g = ts::gnm_graph(20, 35, rng);
  std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
  write_graph_binary(buf, g);
  const Graph back = read_graph_binary(buf);
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.edges() == g.edges());

  std::stringstream bad(std::ios::in | std::ios::out | std::ios::binary);
  bad << "not a graph";
  CHECK_THROWS_AS(read_graph_binary(bad), Error);
}

TEST_CASE("graph_hash distinguishes content") {
  const Graph a(3, {{0, 1}, {1, 2}});
  const Graph b(3, {{0, 1}, {0, 2}});
  CHECK(graph_hash(a) != graph_hash(b));
  CHECK(graph_hash(a) == graph_hash(Graph(3, {{0, 1}, {1, 2}})));
}
