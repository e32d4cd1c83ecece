#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <sstream>

#include "netscale/classify.hpp"
#include "support/generators.hpp"

using namespace netscale;
namespace ts = testsupport;

namespace {

SubgraphSample as_sample(const Graph& g, int label) {
  SubgraphSample s;
  s.subgraph = g;
  s.label = label;
  s.vertices.resize(g.vertex_count());
  std::iota(s.vertices.begin(), s.vertices.end(), 0u);
  return s;
}

// Cliques (+1) versus paths (-1): separable by every feature family.
LabeledDataset clique_vs_path(std::uint32_t kappa, std::uint32_t per_class) {
  LabeledDataset ds;
  ds.kappa = kappa;
  for (std::uint32_t i = 0; i < per_class; ++i) {
    ds.train.push_back(as_sample(ts::complete_graph(kappa), +1));
    ds.test.push_back(as_sample(ts::complete_graph(kappa), +1));
  }
  for (std::uint32_t i = 0; i < per_class; ++i) {
    ds.train.push_back(as_sample(ts::path_graph(kappa), -1));
    ds.test.push_back(as_sample(ts::path_graph(kappa), -1));
  }
  return ds;
}

std::string serialized(const Classifier& c) {
  std::ostringstream os(std::ios::binary);
  save_classifier(os, c);
  return os.str();
}

}  // namespace

TEST_CASE("classifier tags") {
  CHECK(classifier_tag(ClassifierKind::joint_feature_bayes) == "bayes_Cr");
  CHECK(parse_classifier_tag("bayes_C").first == ClassifierKind::single_feature_bayes);
  CHECK(parse_classifier_tag("logistic").first == ClassifierKind::logistic);
  CHECK_THROWS_AS(parse_classifier_tag("forest"), Error);
}

TEST_CASE("histogram bayes") {
  SECTION("separable classes reach accuracy 1") {
    const LabeledDataset ds = clique_vs_path(6, 50);
    const Classifier c =
        train_histogram_bayes(ds, {BayesFeature::clustering_C}, 20);
    CHECK(evaluate(c, ds.test) == 1.0);
  }

  SECTION("joint features on the same data") {
    const LabeledDataset ds = clique_vs_path(6, 50);
    const Classifier c = train_histogram_bayes(
        ds, {BayesFeature::clustering_C, BayesFeature::neighbor_degree_r}, 10);
    CHECK(evaluate(c, ds.test) == 1.0);
  }

  SECTION("empty and tied cells predict +1") {
    HistogramBayesModel m;
    m.features = {BayesFeature::clustering_C};
    m.bins = 2;
    m.quantile_edges.resize(1);
    m.count_pos = {1, 0};
    m.count_neg = {1, 0};
    const Classifier c{ClassifierKind::single_feature_bayes, m};
    CHECK(c.predict(as_sample(ts::complete_graph(4), -1)) == +1);  // empty cell (C=1)
    CHECK(c.predict(as_sample(ts::path_graph(4), -1)) == +1);      // tied cell (C=0)
  }

  SECTION("empty training class errors") {
    LabeledDataset ds;
    ds.kappa = 4;
    ds.train.push_back(as_sample(ts::path_graph(4), +1));
    CHECK_THROWS_AS(train_histogram_bayes(ds, {BayesFeature::clustering_C}, 10), Error);
  }

  SECTION("bins below 2 error") {
    const LabeledDataset ds = clique_vs_path(4, 5);
    CHECK_THROWS_AS(train_histogram_bayes(ds, {BayesFeature::clustering_C}, 1), Error);
  }
}

TEST_CASE("logistic") {
  SECTION("linearly separable data fits to training accuracy 1") {
    const LabeledDataset ds = clique_vs_path(6, 50);
    const Classifier c = train_logistic(ds, 0.5, 300, 1e-4);
    CHECK(evaluate(c, ds.train) == 1.0);
    CHECK(evaluate(c, ds.test) == 1.0);
  }

  SECTION("constant features are dropped, not NaN") {
    // connected == 1 for every sample here; training must still work
    const LabeledDataset ds = clique_vs_path(5, 20);
    const Classifier c = train_logistic(ds, 0.5, 100, 0.0);
    const auto& m = std::get<LogisticModel>(c.model);
    CHECK(m.active[2] == 0);  // 'connected' slot
    CHECK(evaluate(c, ds.test) == 1.0);
  }
}

TEST_CASE("image mlp") {
  SECTION("clique versus path images") {
    const LabeledDataset ds = clique_vs_path(6, 60);
    const Classifier c = train_image_mlp(ds, 8, 0.05, 10, 16, 7);
    CHECK(evaluate(c, ds.test) >= 0.99);
  }

  SECTION("kappa mismatch at predict") {
    const LabeledDataset ds = clique_vs_path(5, 10);
    const Classifier c = train_image_mlp(ds, 4, 0.05, 3, 8, 7);
    CHECK_THROWS_AS(c.predict(as_sample(ts::complete_graph(6), +1)), Error);
  }

  SECTION("deterministic for a fixed seed") {
    const LabeledDataset ds = clique_vs_path(5, 20);
    CHECK(serialized(train_image_mlp(ds, 6, 0.05, 5, 8, 11)) ==
          serialized(train_image_mlp(ds, 6, 0.05, 5, 8, 11)));
    CHECK(serialized(train_image_mlp(ds, 6, 0.05, 5, 8, 11)) !=
          serialized(train_image_mlp(ds, 6, 0.05, 5, 8, 12)));
  }
}

TEST_CASE("connectivity classifier") {
  const Classifier c = connectivity_classifier();
  CHECK(c.predict(as_sample(ts::path_graph(5), -1)) == +1);  // trees are connected
  CHECK(c.predict(as_sample(Graph(4, {{0, 1}, {2, 3}}), +1)) == -1);
}

TEST_CASE("evaluate") {
  const LabeledDataset ds = clique_vs_path(5, 10);
  SECTION("always-plus-one on balanced data scores one half") {
    HistogramBayesModel m;
    m.features = {BayesFeature::clustering_C};
    m.bins = 2;
    m.quantile_edges.resize(1);
    m.count_pos = {0, 0};
    m.count_neg = {0, 0};
    CHECK(evaluate(Classifier{ClassifierKind::single_feature_bayes, m}, ds.test) == 0.5);
  }
  SECTION("perfect classifier scores one") {
    const Classifier c =
        train_histogram_bayes(ds, {BayesFeature::clustering_C}, 4);
    CHECK(evaluate(c, ds.test) == 1.0);
  }
  SECTION("empty test set errors") {
    const Classifier c = connectivity_classifier();
    CHECK_THROWS_AS(evaluate(c, std::vector<SubgraphSample>{}), Error);
  }
}

TEST_CASE("training never reads the test split") {
  Rng rng(5);
  const Graph g = ts::ring_with_shortcuts(60, 20, rng);
  LabeledDataset ds = build_dataset(g, g, 5, 200, 0.5, 33);

  const Classifier bayes_before = train_histogram_bayes(
      ds, {BayesFeature::clustering_C, BayesFeature::neighbor_degree_r}, 10);
  const Classifier logit_before = train_logistic(ds, 0.3, 50, 1e-4);
  const Classifier mlp_before = train_image_mlp(ds, 4, 0.05, 3, 16, 21);

  // corrupt the test split: scramble labels and subgraphs
  for (auto& s : ds.test) {
    s.label = -s.label;
    s.subgraph = ts::complete_graph(5);
  }

  CHECK(serialized(train_histogram_bayes(
            ds, {BayesFeature::clustering_C, BayesFeature::neighbor_degree_r}, 10)) ==
        serialized(bayes_before));
  CHECK(serialized(train_logistic(ds, 0.3, 50, 1e-4)) == serialized(logit_before));
  CHECK(serialized(train_image_mlp(ds, 4, 0.05, 3, 16, 21)) == serialized(mlp_before));
}

TEST_CASE("classifier serialization round trip") {
  const LabeledDataset ds = clique_vs_path(5, 30);
  const std::vector<SubgraphSample>& probe = ds.test;

  auto round_trip = [&probe](const Classifier& c) {
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    save_classifier(buf, c);
    const Classifier back = load_classifier(buf);
    REQUIRE(back.kind == c.kind);
    for (const SubgraphSample& s : probe) CHECK(back.predict(s) == c.predict(s));
    CHECK(serialized(back) == serialized(c));
  };

  round_trip(train_histogram_bayes(ds, {BayesFeature::clustering_C}, 8));
  round_trip(train_histogram_bayes(
      ds, {BayesFeature::clustering_C, BayesFeature::neighbor_degree_r}, 6));
  round_trip(train_logistic(ds, 0.5, 50, 1e-3));
  round_trip(train_image_mlp(ds, 5, 0.05, 3, 8, 3));
  round_trip(connectivity_classifier());

  std::stringstream bad(std::ios::in | std::ios::out | std::ios::binary);
  bad << "garbage";
  CHECK_THROWS_AS(load_classifier(bad), Error);
}

TEST_CASE("estimate_delta") {
  Rng rng(13);
  const Graph g = ts::ring_with_shortcuts(200, 80, rng);

  SECTION("zero swaps: chance accuracy") {
    EstimateConfig cfg;
    cfg.samples_per_class = 3000;
    cfg.repeats = 3;
    const AccuracyEstimate est =
        estimate_delta(g, 6, PerturbationSpec::fraction(0.0, g.edge_count()), cfg, 7);
    CHECK(est.test_size == 3000);
    // 3 repeats of a fair-coin test of size 3000
    const double sigma = std::sqrt(0.25 / 3000.0 / 3.0);
    CHECK_THAT(est.accuracy_mean, Catch::Matchers::WithinAbs(0.5, 4.0 * sigma));
  }

  SECTION("deterministic and schedule-free") {
    EstimateConfig cfg;
    cfg.samples_per_class = 300;
    cfg.repeats = 2;
    const PerturbationSpec spec = PerturbationSpec::fraction(0.3, g.edge_count());
    const AccuracyEstimate a = estimate_delta(g, 5, spec, cfg, 99);
    const AccuracyEstimate b = estimate_delta(g, 5, spec, cfg, 99);
    CHECK(a.accuracy_mean == b.accuracy_mean);
    CHECK(a.accuracy_std == b.accuracy_std);
  }

  SECTION("estimates stay within [0,1] and repeats are respected") {
    EstimateConfig cfg;
    cfg.samples_per_class = 200;
    cfg.repeats = 4;
    const AccuracyEstimate est =
        estimate_delta(g, 4, PerturbationSpec::infinity(5, g.edge_count()), cfg, 3);
    CHECK(est.repeats == 4);
    CHECK(est.accuracy_mean >= 0.0);
    CHECK(est.accuracy_mean <= 1.0);
    CHECK(est.accuracy_std >= 0.0);
  }
}
