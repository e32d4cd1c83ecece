#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "netscale/sampler.hpp"
#include "support/generators.hpp"

using namespace netscale;
namespace ts = testsupport;

TEST_CASE("sample_subgraph") {
  SECTION("kappa = n on a connected graph returns the whole graph") {
    Rng rng(2);
    const Graph g = ts::ring_with_shortcuts(12, 4, rng);
    const SubgraphSample s = sample_subgraph(g, 12, 77);
    CHECK(s.subgraph.vertex_count() == 12);
    CHECK(s.subgraph.edge_count() == g.edge_count());
    CHECK(ts::degree_multiset(s.subgraph) == ts::degree_multiset(g));
  }

  SECTION("kappa = 2 yields a single edge, parallels included") {
    const Graph g(2, {{0, 1}, {0, 1}});
    const SubgraphSample s = sample_subgraph(g, 2, 5);
    CHECK(s.subgraph.vertex_count() == 2);
    CHECK(s.subgraph.edge_count() == 2);
  }

  SECTION("3-cycle kappa=2 always a single edge; 3-path kappa=3 is the path") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const SubgraphSample a = sample_subgraph(ts::cycle_graph(3), 2, seed);
      CHECK(a.subgraph.edge_count() == 1);
      const SubgraphSample b = sample_subgraph(ts::path_graph(3), 3, seed);
      CHECK(b.subgraph.edge_count() == 2);
      CHECK(ts::degree_multiset(b.subgraph) == std::vector<std::uint32_t>{1, 1, 2});
    }
  }

  SECTION("no duplicate vertices, induced subgraph connected") {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      const auto n = static_cast<std::uint32_t>(8 + rng.below(30));
      const Graph g = ts::gnm_graph(n, 2 * n, rng);
      const auto kappa = static_cast<std::uint32_t>(2 + rng.below(6));
      SubgraphSample s;
      try {
        s = sample_subgraph(g, kappa, 400 + trial);
      } catch (const Error&) {
        continue;  // no component of that size
      }
      std::set<std::uint32_t> distinct(s.vertices.begin(), s.vertices.end());
      CHECK(distinct.size() == kappa);
      CHECK(is_connected(s.subgraph));
    }
  }

  SECTION("unreachable kappa errors") {
    const Graph g(5, {{0, 1}, {2, 3}});  // components of size 2, 2, 1
    CHECK_THROWS_WITH(sample_subgraph(g, 4, 9),
                      Catch::Matchers::ContainsSubstring("no component of size"));
  }

  SECTION("kappa bounds") {
    CHECK_THROWS_AS(sample_subgraph(ts::path_graph(3), 1, 0), Error);
    CHECK_THROWS_AS(sample_subgraph(ts::path_graph(3), 4, 0), Error);
  }

  SECTION("deterministic per seed") {
    Rng rng(41);
    const Graph g = ts::gnm_graph(30, 60, rng);
    const SubgraphSample a = sample_subgraph(g, 6, 123);
    const SubgraphSample b = sample_subgraph(g, 6, 123);
    CHECK(a.vertices == b.vertices);
    CHECK(a.subgraph.edges() == b.subgraph.edges());
  }
}

TEST_CASE("build_dataset") {
  Rng rng(51);
  const Graph g = ts::ring_with_shortcuts(40, 15, rng);

  SECTION("split sizes and balance") {
    const LabeledDataset ds = build_dataset(g, g, 4, 10, 0.5, 3);
    CHECK(ds.train.size() == 10);
    CHECK(ds.test.size() == 10);
    int train_pos = 0, test_pos = 0;
    for (const auto& s : ds.train) train_pos += s.label == +1;
    for (const auto& s : ds.test) test_pos += s.label == +1;
    CHECK(train_pos == 5);
    CHECK(test_pos == 5);
  }

  SECTION("degenerate floor split") {
    const LabeledDataset ds = build_dataset(g, g, 4, 1, 0.5, 3);
    CHECK(ds.train.empty());
    CHECK(ds.test.size() == 2);
  }

  SECTION("deterministic for fixed inputs and seed") {
    const LabeledDataset a = build_dataset(g, g, 5, 8, 0.5, 17);
    const LabeledDataset b = build_dataset(g, g, 5, 8, 0.5, 17);
    REQUIRE(a.train.size() == b.train.size());
    for (std::size_t i = 0; i < a.train.size(); ++i)
      CHECK(a.train[i].vertices == b.train[i].vertices);
    for (std::size_t i = 0; i < a.test.size(); ++i)
      CHECK(a.test[i].vertices == b.test[i].vertices);
  }

  SECTION("errors name the offending graph") {
    const Graph small(3, {{0, 1}, {1, 2}});
    const Graph tiny(2, {{0, 1}});
    CHECK_THROWS_WITH(build_dataset(small, tiny, 3, 2, 0.5, 1),
                      Catch::Matchers::ContainsSubstring("perturbed"));
  }
}

TEST_CASE("sample stream cache round trip") {
  Rng rng(61);
  const Graph g = ts::gnm_graph(25, 50, rng);
  std::vector<SubgraphSample> samples = draw_samples(g, 5, 20, 42);
  samples[3].label = -1;

  std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
  write_sample_stream(buf, samples, 5);
  std::uint32_t kappa = 0;
  const auto back = read_sample_stream(buf, &kappa);
  CHECK(kappa == 5);
  REQUIRE(back.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i].vertices == samples[i].vertices);
    CHECK(back[i].label == samples[i].label);
    CHECK(back[i].subgraph.edges() == samples[i].subgraph.edges());
  }

  CHECK(sample_cache_name(0xabcULL, 5, 20, 42) ==
        "samples_0000000000000abc_k5_c20_s42.nss");
}
