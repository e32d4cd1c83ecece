#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "netscale/features.hpp"
#include "netscale/graph.hpp"
#include "netscale/perturb.hpp"
#include "netscale/sampler.hpp"
#include "netscale/seeds.hpp"

namespace netscale {

enum class ClassifierKind : std::uint8_t {
  single_feature_bayes,
  joint_feature_bayes,
  logistic,
  image_mlp,
  connectivity,
};

enum class BayesFeature : std::uint8_t { clustering_C, neighbor_degree_r };

inline double bayes_feature_value(BayesFeature f, const FeatureVector& fv) {
  return f == BayesFeature::clustering_C ? fv.clustering_C : fv.neighbor_degree_r;
}

/// Histogram Bayes classifier over one or two classical features. C uses
/// uniform bins on [0,1]; r uses training-quantile bins. Prediction is the
/// majority class of the cell; empty or tied cells predict +1.
struct HistogramBayesModel {
  std::vector<BayesFeature> features;
  std::uint32_t bins = 0;
  std::vector<std::vector<double>> quantile_edges;  // per feature; empty = uniform [0,1]
  std::vector<std::uint32_t> count_pos;             // per cell
  std::vector<std::uint32_t> count_neg;

  std::uint32_t bin_of(std::size_t fi, double value) const {
    if (quantile_edges[fi].empty()) {
      const double clamped = std::clamp(value, 0.0, 1.0);
      return std::min<std::uint32_t>(bins - 1,
                                     static_cast<std::uint32_t>(clamped * bins));
    }
    const auto& edges = quantile_edges[fi];
    return static_cast<std::uint32_t>(
        std::upper_bound(edges.begin(), edges.end(), value) - edges.begin());
  }

  std::size_t cell_of(const FeatureVector& fv) const {
    std::size_t cell = 0;
    for (std::size_t fi = 0; fi < features.size(); ++fi)
      cell = cell * bins + bin_of(fi, bayes_feature_value(features[fi], fv));
    return cell;
  }

  int predict(const SubgraphSample& s) const {
    const std::size_t cell = cell_of(feature_vector(s));
    return count_pos[cell] >= count_neg[cell] ? +1 : -1;
  }
};

/// Logistic regression on the standardized FeatureVector, full-batch
/// gradient descent on L2-regularized log-loss.
struct LogisticModel {
  std::vector<double> mean, stdev, weights;  // size 6; dropped features weight 0
  std::vector<std::uint8_t> active;
  double bias = 0.0;

  double score(const SubgraphSample& s) const {
    const auto x = feature_vector(s).as_array();
    double z = bias;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (active[i]) z += weights[i] * (x[i] - mean[i]) / stdev[i];
    return z;
  }

  int predict(const SubgraphSample& s) const { return score(s) >= 0.0 ? +1 : -1; }
};

/// One-hidden-layer rectifier network on the kappa^2 signature pixels with a
/// logistic output; a reduced-capacity stand-in for image classification.
struct ImageMlpModel {
  std::uint32_t kappa = 0;
  std::uint32_t hidden = 0;
  std::vector<double> w1;  // hidden x kappa^2
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden
  double b2 = 0.0;

  double score_pixels(const std::vector<std::uint8_t>& px) const {
    const std::size_t d = static_cast<std::size_t>(kappa) * kappa;
    double z = b2;
    for (std::uint32_t h = 0; h < hidden; ++h) {
      double a = b1[h];
      const double* row = w1.data() + static_cast<std::size_t>(h) * d;
      for (std::size_t i = 0; i < d; ++i)
        if (px[i]) a += row[i];
      if (a > 0.0) z += w2[h] * a;
    }
    return z;
  }

  int predict(const SubgraphSample& s) const {
    if (s.subgraph.vertex_count() != kappa)
      throw Error("image classifier: kappa mismatch");
    return score_pixels(signature_image(s).pixels) >= 0.0 ? +1 : -1;
  }
};

struct ConnectivityModel {
  int predict(const SubgraphSample& s) const {
    return is_connected(s.subgraph) ? +1 : -1;
  }
};

struct Classifier {
  ClassifierKind kind = ClassifierKind::connectivity;
  std::variant<ConnectivityModel, HistogramBayesModel, LogisticModel, ImageMlpModel> model;

  int predict(const SubgraphSample& s) const {
    return std::visit([&s](const auto& m) { return m.predict(s); }, model);
  }
};

/// Short tag used in CSV output and on the command line.
inline std::string classifier_tag(ClassifierKind kind,
                                  std::span<const BayesFeature> features = {}) {
  switch (kind) {
    case ClassifierKind::single_feature_bayes:
      return features.size() == 1 && features[0] == BayesFeature::neighbor_degree_r
                 ? "bayes_r"
                 : "bayes_C";
    case ClassifierKind::joint_feature_bayes:
      return "bayes_Cr";
    case ClassifierKind::logistic:
      return "logistic";
    case ClassifierKind::image_mlp:
      return "image_mlp";
    case ClassifierKind::connectivity:
      return "connectivity";
  }
  throw Error("classifier_tag: unknown kind");
}

inline std::pair<ClassifierKind, std::vector<BayesFeature>> parse_classifier_tag(
    const std::string& tag) {
  if (tag == "bayes_C")
    return {ClassifierKind::single_feature_bayes, {BayesFeature::clustering_C}};
  if (tag == "bayes_r")
    return {ClassifierKind::single_feature_bayes, {BayesFeature::neighbor_degree_r}};
  if (tag == "bayes_Cr")
    return {ClassifierKind::joint_feature_bayes,
            {BayesFeature::clustering_C, BayesFeature::neighbor_degree_r}};
  if (tag == "logistic") return {ClassifierKind::logistic, {}};
  if (tag == "image_mlp") return {ClassifierKind::image_mlp, {}};
  if (tag == "connectivity") return {ClassifierKind::connectivity, {}};
  throw Error("unknown classifier: " + tag);
}

inline Classifier train_histogram_bayes(const LabeledDataset& ds,
                                        std::vector<BayesFeature> features,
                                        std::uint32_t bins) {
  if (bins < 2) throw Error("train_histogram_bayes: bins must be >= 2");
  if (features.empty() || features.size() > 2)
    throw Error("train_histogram_bayes: need 1 or 2 features");

  std::vector<FeatureVector> fvs;
  fvs.reserve(ds.train.size());
  std::size_t pos_count = 0;
  for (const SubgraphSample& s : ds.train) {
    fvs.push_back(feature_vector(s));
    if (s.label == +1) ++pos_count;
  }
  if (pos_count == 0 || pos_count == ds.train.size())
    throw Error("train_histogram_bayes: empty training class");

  HistogramBayesModel m;
  m.features = std::move(features);
  m.bins = bins;
  m.quantile_edges.resize(m.features.size());
  for (std::size_t fi = 0; fi < m.features.size(); ++fi) {
    if (m.features[fi] == BayesFeature::clustering_C) continue;  // uniform [0,1]
    std::vector<double> values;
    values.reserve(fvs.size());
    for (const FeatureVector& fv : fvs)
      values.push_back(bayes_feature_value(m.features[fi], fv));
    std::sort(values.begin(), values.end());
    auto& edges = m.quantile_edges[fi];
    for (std::uint32_t k = 1; k < bins; ++k) {
      const std::size_t idx = k * values.size() / bins;
      edges.push_back(values[std::min(idx, values.size() - 1)]);
    }
  }

  std::size_t cells = 1;
  for (std::size_t fi = 0; fi < m.features.size(); ++fi) cells *= bins;
  m.count_pos.assign(cells, 0);
  m.count_neg.assign(cells, 0);
  for (std::size_t i = 0; i < fvs.size(); ++i) {
    const std::size_t cell = m.cell_of(fvs[i]);
    if (ds.train[i].label == +1)
      ++m.count_pos[cell];
    else
      ++m.count_neg[cell];
  }
  return Classifier{m.features.size() == 2 ? ClassifierKind::joint_feature_bayes
                                           : ClassifierKind::single_feature_bayes,
                    std::move(m)};
}

inline Classifier train_logistic(const LabeledDataset& ds, double learn_rate,
                                 std::uint32_t epochs, double l2) {
  if (ds.train.empty()) throw Error("train_logistic: empty training set");
  constexpr std::size_t dim = 6;
  const std::size_t n = ds.train.size();

  std::vector<std::array<double, dim>> xs(n);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = feature_vector(ds.train[i]).as_array();
    ys[i] = ds.train[i].label;
  }

  LogisticModel m;
  m.mean.assign(dim, 0.0);
  m.stdev.assign(dim, 1.0);
  m.weights.assign(dim, 0.0);
  m.active.assign(dim, 1);
  for (std::size_t j = 0; j < dim; ++j) {
    double sum = 0.0;
    for (const auto& x : xs) sum += x[j];
    m.mean[j] = sum / n;
    double var = 0.0;
    for (const auto& x : xs) var += (x[j] - m.mean[j]) * (x[j] - m.mean[j]);
    const double sd = std::sqrt(var / n);
    if (sd < 1e-12) {
      m.active[j] = 0;  // constant feature: dropped
    } else {
      m.stdev[j] = sd;
    }
  }
  for (auto& x : xs)
    for (std::size_t j = 0; j < dim; ++j)
      x[j] = m.active[j] ? (x[j] - m.mean[j]) / m.stdev[j] : 0.0;

  std::vector<double> grad(dim);
  for (std::uint32_t epoch = 0; epoch < epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0, loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = m.bias;
      for (std::size_t j = 0; j < dim; ++j) z += m.weights[j] * xs[i][j];
      const double yz = ys[i] * z;
      loss += yz > 0 ? std::log1p(std::exp(-yz)) : -yz + std::log1p(std::exp(yz));
      const double coeff = -ys[i] / (1.0 + std::exp(yz));
      for (std::size_t j = 0; j < dim; ++j) grad[j] += coeff * xs[i][j];
      grad_b += coeff;
    }
    if (!std::isfinite(loss))
      throw Error("train_logistic: non-finite loss at epoch " + std::to_string(epoch));
    for (std::size_t j = 0; j < dim; ++j) {
      if (!m.active[j]) continue;
      m.weights[j] -= learn_rate * (grad[j] / n + l2 * m.weights[j]);
    }
    m.bias -= learn_rate * grad_b / n;
  }
  return Classifier{ClassifierKind::logistic, std::move(m)};
}

inline Classifier train_image_mlp(const LabeledDataset& ds, std::uint32_t hidden,
                                  double learn_rate, std::uint32_t epochs,
                                  std::uint32_t batch, std::uint64_t seed) {
  if (ds.train.empty()) throw Error("train_image_mlp: empty training set");
  if (hidden < 1) throw Error("train_image_mlp: hidden must be >= 1");
  const std::uint32_t kappa = ds.kappa;
  const std::size_t d = static_cast<std::size_t>(kappa) * kappa;
  const std::size_t n = ds.train.size();

  std::vector<std::vector<std::uint8_t>> px(n);
  std::vector<double> ys(n);  // 0/1 targets
  for (std::size_t i = 0; i < n; ++i) {
    if (ds.train[i].subgraph.vertex_count() != kappa)
      throw Error("train_image_mlp: kappa mismatch in training set");
    px[i] = signature_image(ds.train[i]).pixels;
    ys[i] = ds.train[i].label == +1 ? 1.0 : 0.0;
  }

  ImageMlpModel m;
  m.kappa = kappa;
  m.hidden = hidden;
  m.w1.resize(static_cast<std::size_t>(hidden) * d);
  m.b1.assign(hidden, 0.0);
  m.w2.resize(hidden);
  Rng rng(derive_seed(seed, {seed_tag::train}));
  const double s1 = std::sqrt(2.0 / static_cast<double>(d));
  const double s2 = std::sqrt(2.0 / static_cast<double>(hidden));
  for (double& w : m.w1) w = s1 * rng.normal();
  for (double& w : m.w2) w = s2 * rng.normal();

  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::vector<double> act(hidden);
  std::vector<double> hid_grad(hidden);
  if (batch == 0) batch = 1;

  for (std::uint32_t epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
    double loss = 0.0;
    for (std::size_t begin = 0; begin < n; begin += batch) {
      const std::size_t end = std::min(begin + batch, n);
      const double inv = 1.0 / static_cast<double>(end - begin);
      for (std::size_t q = begin; q < end; ++q) {
        const std::size_t i = idx[q];
        double z = m.b2;
        for (std::uint32_t h = 0; h < hidden; ++h) {
          double a = m.b1[h];
          const double* row = m.w1.data() + static_cast<std::size_t>(h) * d;
          for (std::size_t k = 0; k < d; ++k)
            if (px[i][k]) a += row[k];
          act[h] = a > 0.0 ? a : 0.0;
          z += m.w2[h] * act[h];
        }
        const double p = 1.0 / (1.0 + std::exp(-z));
        loss += z > 0 ? std::log1p(std::exp(-z)) + (1.0 - ys[i]) * z
                      : std::log1p(std::exp(z)) - ys[i] * z;
        const double dz = (p - ys[i]) * inv;
        for (std::uint32_t h = 0; h < hidden; ++h) {
          hid_grad[h] = act[h] > 0.0 ? dz * m.w2[h] : 0.0;
          m.w2[h] -= learn_rate * dz * act[h];
        }
        m.b2 -= learn_rate * dz;
        for (std::uint32_t h = 0; h < hidden; ++h) {
          if (hid_grad[h] == 0.0) continue;
          double* row = m.w1.data() + static_cast<std::size_t>(h) * d;
          const double step = learn_rate * hid_grad[h];
          for (std::size_t k = 0; k < d; ++k)
            if (px[i][k]) row[k] -= step;
          m.b1[h] -= step;
        }
      }
    }
    if (!std::isfinite(loss))
      throw Error("train_image_mlp: non-finite loss at epoch " + std::to_string(epoch));
  }
  return Classifier{ClassifierKind::image_mlp, std::move(m)};
}

inline Classifier connectivity_classifier() {
  return Classifier{ClassifierKind::connectivity, ConnectivityModel{}};
}

inline double evaluate(const Classifier& c, std::span<const SubgraphSample> test) {
  if (test.empty()) throw Error("evaluate: empty test set");
  std::size_t correct = 0;
  for (const SubgraphSample& s : test)
    if (c.predict(s) == s.label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

struct AccuracyEstimate {
  std::uint32_t kappa = 0;
  PerturbationSpec delta;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  std::uint32_t repeats = 0;
  std::size_t test_size = 0;
  std::string classifier;
};

struct EstimateConfig {
  ClassifierKind kind = ClassifierKind::joint_feature_bayes;
  std::vector<BayesFeature> features = {BayesFeature::clustering_C,
                                        BayesFeature::neighbor_degree_r};
  std::uint32_t bins = 20;
  std::uint32_t samples_per_class = 10000;
  double train_fraction = 0.5;
  std::uint32_t repeats = 10;
  double logistic_rate = 0.5;
  std::uint32_t logistic_epochs = 300;
  double logistic_l2 = 1e-4;
  std::uint32_t mlp_hidden = 32;
  double mlp_rate = 0.05;
  std::uint32_t mlp_epochs = 20;
  std::uint32_t mlp_batch = 32;

  std::string tag() const { return classifier_tag(kind, features); }
};

inline Classifier train_for(const EstimateConfig& cfg, const LabeledDataset& ds,
                            std::uint64_t seed) {
  switch (cfg.kind) {
    case ClassifierKind::single_feature_bayes:
    case ClassifierKind::joint_feature_bayes:
      return train_histogram_bayes(ds, cfg.features, cfg.bins);
    case ClassifierKind::logistic:
      return train_logistic(ds, cfg.logistic_rate, cfg.logistic_epochs, cfg.logistic_l2);
    case ClassifierKind::image_mlp:
      return train_image_mlp(ds, cfg.mlp_hidden, cfg.mlp_rate, cfg.mlp_epochs,
                             cfg.mlp_batch, seed);
    case ClassifierKind::connectivity:
      return connectivity_classifier();
  }
  throw Error("train_for: unknown classifier kind");
}

/// Full pipeline behind one grid cell: per repeat, perturb, sample a labeled
/// dataset, train, and evaluate on the held-out test draw; mean/std over
/// repeats. The result lower-bounds the true distinguishability at (k, delta).
/// A failed repeat aborts the estimate.
inline AccuracyEstimate estimate_delta(const Graph& g, std::uint32_t kappa,
                                       const PerturbationSpec& spec,
                                       const EstimateConfig& cfg, std::uint64_t seed) {
  if (cfg.repeats < 1) throw Error("estimate_delta: repeats must be >= 1");
  std::vector<double> accs;
  accs.reserve(cfg.repeats);
  std::size_t test_size = 0;
  const std::uint64_t delta_bits = spec.infinite ? ~0ULL : spec.swap_count;
  for (std::uint32_t r = 0; r < cfg.repeats; ++r) {
    const std::uint64_t perturb_seed =
        derive_seed(seed, {seed_tag::perturb, kappa, delta_bits, r});
    auto [gd, outcome] = perturb(g, spec, perturb_seed);
    const std::uint64_t data_seed =
        derive_seed(seed, {seed_tag::dataset, kappa, delta_bits, r});
    const LabeledDataset ds =
        build_dataset(g, gd, kappa, cfg.samples_per_class, cfg.train_fraction, data_seed);
    const std::uint64_t train_seed =
        derive_seed(seed, {seed_tag::train, kappa, delta_bits, r});
    const Classifier c = train_for(cfg, ds, train_seed);
    accs.push_back(evaluate(c, ds.test));
    test_size = ds.test.size();
  }

  AccuracyEstimate est;
  est.kappa = kappa;
  est.delta = spec;
  est.repeats = cfg.repeats;
  est.test_size = test_size;
  est.classifier = cfg.tag();
  double sum = 0.0;
  for (double a : accs) sum += a;
  est.accuracy_mean = sum / accs.size();
  if (accs.size() > 1) {
    double ss = 0.0;
    for (double a : accs) ss += (a - est.accuracy_mean) * (a - est.accuracy_mean);
    est.accuracy_std = std::sqrt(ss / (accs.size() - 1));
  }
  return est;
}

// --- classifier serialization (versioned binary record) ---

inline constexpr char kClassifierMagic[4] = {'N', 'S', 'C', 'L'};
inline constexpr std::uint32_t kClassifierFormatVersion = 1;

namespace detail {

inline void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(os, bits);
}

inline double get_f64(std::istream& is) {
  const std::uint64_t bits = get_u64(is);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

inline void put_f64_vec(std::ostream& os, const std::vector<double>& v) {
  put_u64(os, v.size());
  for (double x : v) put_f64(os, x);
}

inline std::vector<double> get_f64_vec(std::istream& is) {
  std::vector<double> v(get_u64(is));
  for (double& x : v) x = get_f64(is);
  return v;
}

inline void put_u32_vec(std::ostream& os, const std::vector<std::uint32_t>& v) {
  put_u64(os, v.size());
  for (std::uint32_t x : v) put_u32(os, x);
}

inline std::vector<std::uint32_t> get_u32_vec(std::istream& is) {
  std::vector<std::uint32_t> v(get_u64(is));
  for (std::uint32_t& x : v) x = get_u32(is);
  return v;
}

}  // namespace detail

inline void save_classifier(std::ostream& os, const Classifier& c) {
  os.write(kClassifierMagic, 4);
  detail::put_u32(os, kClassifierFormatVersion);
  detail::put_u32(os, static_cast<std::uint32_t>(c.kind));
  if (const auto* m = std::get_if<HistogramBayesModel>(&c.model)) {
    detail::put_u32(os, static_cast<std::uint32_t>(m->features.size()));
    for (BayesFeature f : m->features) detail::put_u32(os, static_cast<std::uint32_t>(f));
    detail::put_u32(os, m->bins);
    for (const auto& edges : m->quantile_edges) detail::put_f64_vec(os, edges);
    detail::put_u32_vec(os, m->count_pos);
    detail::put_u32_vec(os, m->count_neg);
  } else if (const auto* m = std::get_if<LogisticModel>(&c.model)) {
    detail::put_f64_vec(os, m->mean);
    detail::put_f64_vec(os, m->stdev);
    detail::put_f64_vec(os, m->weights);
    detail::put_u64(os, m->active.size());
    for (std::uint8_t a : m->active) os.put(static_cast<char>(a));
    detail::put_f64(os, m->bias);
  } else if (const auto* m = std::get_if<ImageMlpModel>(&c.model)) {
    detail::put_u32(os, m->kappa);
    detail::put_u32(os, m->hidden);
    detail::put_f64_vec(os, m->w1);
    detail::put_f64_vec(os, m->b1);
    detail::put_f64_vec(os, m->w2);
    detail::put_f64(os, m->b2);
  }
  if (!os) throw Error("save_classifier: write failed");
}

inline Classifier load_classifier(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || !std::equal(magic, magic + 4, kClassifierMagic))
    throw Error("load_classifier: bad magic");
  if (detail::get_u32(is) != kClassifierFormatVersion)
    throw Error("load_classifier: unsupported version");
  const auto kind = static_cast<ClassifierKind>(detail::get_u32(is));
  Classifier c;
  c.kind = kind;
  switch (kind) {
    case ClassifierKind::single_feature_bayes:
    case ClassifierKind::joint_feature_bayes: {
      HistogramBayesModel m;
      const std::uint32_t nf = detail::get_u32(is);
      for (std::uint32_t i = 0; i < nf; ++i)
        m.features.push_back(static_cast<BayesFeature>(detail::get_u32(is)));
      m.bins = detail::get_u32(is);
      m.quantile_edges.resize(nf);
      for (auto& edges : m.quantile_edges) edges = detail::get_f64_vec(is);
      m.count_pos = detail::get_u32_vec(is);
      m.count_neg = detail::get_u32_vec(is);
      c.model = std::move(m);
      break;
    }
    case ClassifierKind::logistic: {
      LogisticModel m;
      m.mean = detail::get_f64_vec(is);
      m.stdev = detail::get_f64_vec(is);
      m.weights = detail::get_f64_vec(is);
      m.active.resize(detail::get_u64(is));
      for (auto& a : m.active) a = static_cast<std::uint8_t>(is.get());
      m.bias = detail::get_f64(is);
      c.model = std::move(m);
      break;
    }
    case ClassifierKind::image_mlp: {
      ImageMlpModel m;
      m.kappa = detail::get_u32(is);
      m.hidden = detail::get_u32(is);
      m.w1 = detail::get_f64_vec(is);
      m.b1 = detail::get_f64_vec(is);
      m.w2 = detail::get_f64_vec(is);
      m.b2 = detail::get_f64(is);
      c.model = std::move(m);
      break;
    }
    case ClassifierKind::connectivity:
      c.model = ConnectivityModel{};
      break;
    default:
      throw Error("load_classifier: unknown kind");
  }
  if (!is) throw Error("load_classifier: truncated stream");
  return c;
}

}  // namespace netscale
