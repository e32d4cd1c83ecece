#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "netscale/perturb.hpp"
#include "support/generators.hpp"

using namespace netscale;
namespace ts = testsupport;

TEST_CASE("edge_swap") {
  SECTION("disjoint pair rewires, degrees unchanged") {
    const Graph g(4, {{0, 1}, {2, 3}});
    const auto swapped = edge_swap(g, 0, 1, false, false);
    REQUIRE(swapped.has_value());
    CHECK(ts::edge_multiset(*swapped) ==
          std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 2}, {1, 3}});
    for (std::uint32_t v = 0; v < 4; ++v) CHECK(swapped->degree(v) == 1);
  }
  SECTION("shared vertex rejected") {
    const Graph g(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(edge_swap(g, 0, 1, false, false).has_value());
  }
  SECTION("parallel pair rejected") {
    const Graph g(2, {{0, 1}, {0, 1}});
    CHECK_FALSE(edge_swap(g, 0, 1, false, false).has_value());
    CHECK_FALSE(edge_swap(g, 0, 1, true, false).has_value());
  }
  SECTION("orientation flip changes the re-pairing") {
    const Graph g(4, {{0, 1}, {2, 3}});
    const auto flipped = edge_swap(g, 0, 1, true, false);
    REQUIRE(flipped.has_value());
    CHECK(ts::edge_multiset(*flipped) ==
          std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 3}, {1, 2}});
  }
  SECTION("bad indices throw") {
    const Graph g(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(edge_swap(g, 0, 0, false, false), Error);
    CHECK_THROWS_AS(edge_swap(g, 0, 9, false, false), Error);
  }
}

TEST_CASE("PerturbationSpec arithmetic") {
  CHECK(PerturbationSpec::fraction(0.1, 100).swap_count == 10);
  CHECK(PerturbationSpec::fraction(0.5, 100).swap_count == 50);
  CHECK(PerturbationSpec::infinity(20, 100).swap_count == 2000);
  CHECK(PerturbationSpec::fraction(0.3, 756).swap_count == 227);  // ceil
  CHECK(PerturbationSpec::infinity(20, 88234).swap_count == 1764680);
  CHECK(PerturbationSpec::fraction(0.1, 100).label() == "0.1");
  CHECK(PerturbationSpec::infinity(20, 100).label() == "inf");
  CHECK_THROWS_AS(PerturbationSpec::fraction(-0.1, 100), Error);
}

TEST_CASE("delta_grid") {
  const auto grid = delta_grid(100, {0.1, 0.5}, true, 20);
  REQUIRE(grid.size() == 3);
  CHECK(grid[0].swap_count == 10);
  CHECK(grid[1].swap_count == 50);
  CHECK(grid[2].swap_count == 2000);
  CHECK(grid[2].infinite);
  CHECK_THROWS_AS(delta_grid(100, {-0.2}, false, 20), Error);
}

TEST_CASE("perturb") {
  SECTION("zero swaps returns the graph unchanged") {
    Rng rng(3);
    const Graph g = ts::gnm_graph(10, 15, rng);
    const auto [gd, outcome] = perturb(g, PerturbationSpec::fraction(0.0, g.edge_count()), 7);
    CHECK(gd.edges() == g.edges());
    CHECK(outcome.succeeded == 0);
    CHECK(outcome.attempted == 0);
  }

  SECTION("degree multiset preserved, no self-loops, m invariant") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
      const auto n = static_cast<std::uint32_t>(8 + rng.below(24));
      const Graph g = ts::gnm_graph(n, n + static_cast<std::uint32_t>(rng.below(n)), rng);
      const double fractions[] = {0.1, 0.5, 1.0};
      const PerturbationSpec spec =
          trial % 4 == 3 ? PerturbationSpec::infinity(5, g.edge_count())
                         : PerturbationSpec::fraction(fractions[trial % 3], g.edge_count());
      const auto [gd, outcome] = perturb(g, spec, 1000 + trial);
      CHECK(outcome.succeeded == spec.swap_count);
      CHECK(outcome.attempted == outcome.succeeded + outcome.rejected_shared_vertex);
      CHECK(gd.edge_count() == g.edge_count());
      CHECK(ts::degree_multiset(gd) == ts::degree_multiset(g));
      for (const Edge& e : gd.edges()) CHECK(e.u != e.v);
    }
  }

  SECTION("deterministic for a fixed seed") {
    Rng rng(23);
    const Graph g = ts::gnm_graph(20, 40, rng);
    const PerturbationSpec spec = PerturbationSpec::fraction(0.5, g.edge_count());
    const auto [a, oa] = perturb(g, spec, 99);
    const auto [b, ob] = perturb(g, spec, 99);
    CHECK(a.edges() == b.edges());
    CHECK(oa.attempted == ob.attempted);
    const auto [c, oc] = perturb(g, spec, 100);
    CHECK(ts::edge_multiset(a) != ts::edge_multiset(c));  // different seed moves
  }

  SECTION("star cannot mix") {
    const Graph star = ts::star_graph(6);
    CHECK_THROWS_AS(perturb(star, PerturbationSpec::fraction(0.5, star.edge_count()), 1),
                    MixingFailure);
  }

  SECTION("infinity randomizes a 3-regular graph: degrees kept, triangles move") {
    // 3-regular on 100 vertices with many triangles: 25 disjoint K4 blocks
    std::vector<Edge> edges;
    const std::uint32_t n = 100;
    for (std::uint32_t block = 0; block < n; block += 4)
      for (std::uint32_t i = 0; i < 4; ++i)
        for (std::uint32_t j = i + 1; j < 4; ++j) edges.push_back({block + i, block + j});
    const Graph g(n, std::move(edges));
    for (std::uint32_t v = 0; v < n; ++v) REQUIRE(g.degree(v) == 3);

    const std::uint64_t base_triangles = ts::triangle_count_brute(g);
    const PerturbationSpec inf_spec = PerturbationSpec::infinity(20, g.edge_count());
    int changed = 0;
    for (int s = 0; s < 50; ++s) {
      const auto [gd, outcome] = perturb(g, inf_spec, 5000 + s);
      CHECK(ts::degree_multiset(gd) == ts::degree_multiset(g));
      if (ts::triangle_count_brute(gd) != base_triangles) ++changed;
    }
    CHECK(changed >= 49);  // with high probability over seeds
  }
}
