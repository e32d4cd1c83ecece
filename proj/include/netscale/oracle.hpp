#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "netscale/features.hpp"
#include "netscale/graph.hpp"
#include "netscale/perturb.hpp"
#include "netscale/sampler.hpp"
#include "netscale/seeds.hpp"

namespace netscale {

/// Byte key of a signature image: kappa followed by the packed upper
/// triangle. Two subgraphs share a key iff the canonical ordering maps them
/// to the same picture.
inline std::string signature_key(const SignatureImage& img) {
  std::string key;
  key.reserve(4 + (static_cast<std::size_t>(img.kappa) * img.kappa) / 16 + 1);
  for (int i = 0; i < 4; ++i)
    key.push_back(static_cast<char>((img.kappa >> (8 * i)) & 0xff));
  std::uint8_t acc = 0;
  int nbits = 0;
  for (std::uint32_t i = 0; i < img.kappa; ++i) {
    for (std::uint32_t j = i + 1; j < img.kappa; ++j) {
      acc = static_cast<std::uint8_t>((acc << 1) | img.at(i, j));
      if (++nbits == 8) {
        key.push_back(static_cast<char>(acc));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) key.push_back(static_cast<char>(acc << (8 - nbits)));
  return key;
}

/// Monte-Carlo estimate of the walker-induced distribution over signature
/// classes at scale kappa.
struct EmpiricalDistribution {
  std::uint32_t kappa = 0;
  std::map<std::string, double> mass;
  std::uint64_t sample_count = 0;
};

inline EmpiricalDistribution empirical_distribution_from_samples(
    std::span<const SubgraphSample> samples) {
  if (samples.empty()) throw Error("empirical_distribution: need at least 1 sample");
  std::map<std::string, std::uint64_t> counts;
  for (const SubgraphSample& s : samples) ++counts[signature_key(signature_image(s))];
  EmpiricalDistribution dist;
  dist.kappa = samples.front().subgraph.vertex_count();
  dist.sample_count = samples.size();
  for (const auto& [key, count] : counts)
    dist.mass.emplace(key,
                      static_cast<double>(count) / static_cast<double>(samples.size()));
  return dist;
}

/// Streams the draws (same per-index seed derivation as draw_samples), so a
/// million-sample run does not hold a million subgraphs.
inline EmpiricalDistribution empirical_distribution(const Graph& g, std::uint32_t kappa,
                                                    std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error("empirical_distribution: need at least 1 sample");
  std::map<std::string, std::uint64_t> counts;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const SubgraphSample s =
        sample_subgraph(g, kappa, derive_seed(seed, {seed_tag::sample, i}));
    ++counts[signature_key(signature_image(s))];
  }
  EmpiricalDistribution dist;
  dist.kappa = kappa;
  dist.sample_count = samples;
  for (const auto& [key, count] : counts)
    dist.mass.emplace(key, static_cast<double>(count) / static_cast<double>(samples));
  return dist;
}

/// Best achievable accuracy distinguishing the two distributions:
/// one half the sum over the key union of max(p0, p1).
inline double bayes_accuracy(const EmpiricalDistribution& p0, const EmpiricalDistribution& p1) {
  if (p0.kappa != p1.kappa) throw Error("bayes_accuracy: kappa mismatch");
  double total = 0.0;
  auto it0 = p0.mass.begin();
  auto it1 = p1.mass.begin();
  while (it0 != p0.mass.end() || it1 != p1.mass.end()) {
    if (it1 == p1.mass.end() || (it0 != p0.mass.end() && it0->first < it1->first)) {
      total += it0->second;
      ++it0;
    } else if (it0 == p0.mass.end() || it1->first < it0->first) {
      total += it1->second;
      ++it1;
    } else {
      total += std::max(it0->second, it1->second);
      ++it0;
      ++it1;
    }
  }
  return 0.5 * total;
}

inline void write_distribution_csv(std::ostream& os, const EmpiricalDistribution& dist) {
  os << "key_hash,probability\n";
  char buf[64];
  for (const auto& [key, p] : dist.mass) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : key) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    std::snprintf(buf, sizeof(buf), "%016llx,%.9f\n", static_cast<unsigned long long>(h), p);
    os << buf;
  }
}

/// Uniform random labeled tree via a Pruefer sequence.
inline Graph random_tree(std::uint32_t t, Rng& rng) {
  if (t == 0) throw Error("random_tree: need at least 1 vertex");
  if (t == 1) return Graph(1, {});
  if (t == 2) return Graph(2, {{0, 1}});

  std::vector<std::uint32_t> seq(t - 2);
  for (auto& s : seq) s = static_cast<std::uint32_t>(rng.below(t));
  std::vector<std::uint32_t> degree(t, 1);
  for (std::uint32_t s : seq) ++degree[s];

  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> leaves;
  for (std::uint32_t v = 0; v < t; ++v)
    if (degree[v] == 1) leaves.push(v);

  std::vector<Edge> edges;
  edges.reserve(t - 1);
  for (std::uint32_t s : seq) {
    const std::uint32_t leaf = leaves.top();
    leaves.pop();
    edges.push_back({leaf, s});
    if (--degree[s] == 1) leaves.push(s);
  }
  const std::uint32_t a = leaves.top();
  leaves.pop();
  const std::uint32_t b = leaves.top();
  edges.push_back({a, b});
  return Graph(t, std::move(edges));
}

struct TreeDemoResult {
  std::uint32_t tree_size = 0;
  std::uint64_t trials = 0;
  double accuracy = 0.0;
  double connected_fraction_randomized = 0.0;

  double standard_error() const {
    const double f = connected_fraction_randomized;
    return 0.5 * std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
  }
};

/// Connectivity experiment on uniform random trees: randomize each tree with
/// Q*m successful swaps and record whether the result stays connected. The
/// connectivity classifier is right on every tree and every disconnected
/// randomized copy, and a fair coin on connected ones, so
/// accuracy = 1 - connected_fraction/2 analytically.
///
/// A star is a fixed point of the swap chain (every edge pair shares the
/// hub), so its randomized copy is the star itself: connected, no swaps run.
inline TreeDemoResult tree_demo(std::uint32_t t, std::uint64_t trials, std::uint32_t q,
                                std::uint64_t seed) {
  if (t < 3) throw Error("tree_demo: tree size must be >= 3");
  if (trials < 1) throw Error("tree_demo: need at least 1 trial");
  const std::size_t m = t - 1;
  const PerturbationSpec spec = PerturbationSpec::infinity(q, m);

  std::uint64_t connected_count = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, {seed_tag::tree, trial}));
    const Graph tree = random_tree(t, rng);
    std::uint32_t max_degree = 0;
    for (std::uint32_t v = 0; v < t; ++v) max_degree = std::max(max_degree, tree.degree(v));
    if (max_degree == t - 1) {
      ++connected_count;  // star: rigid under swaps
      continue;
    }
    const auto [randomized, outcome] =
        perturb(tree, spec, derive_seed(seed, {seed_tag::tree, trial, 1}));
    if (is_connected(randomized)) ++connected_count;
  }

  TreeDemoResult res;
  res.tree_size = t;
  res.trials = trials;
  res.connected_fraction_randomized =
      static_cast<double>(connected_count) / static_cast<double>(trials);
  res.accuracy = 1.0 - res.connected_fraction_randomized / 2.0;
  return res;
}

/// Curve CSV matching the example plot's axes.
inline void write_tree_curve_csv(std::ostream& os, std::span<const TreeDemoResult> curve,
                                 const std::string& config_snapshot = {}) {
  if (!config_snapshot.empty()) {
    std::istringstream lines(config_snapshot);
    std::string line;
    while (std::getline(lines, line)) os << "# " << line << "\n";
  }
  os << "t,accuracy,stderr\n";
  char buf[96];
  for (const TreeDemoResult& r : curve) {
    std::snprintf(buf, sizeof(buf), "%u,%.6f,%.6f\n", r.tree_size, r.accuracy,
                  r.standard_error());
    os << buf;
  }
}

}  // namespace netscale
