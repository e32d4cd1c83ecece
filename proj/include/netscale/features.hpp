#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <span>
#include <vector>

#include "netscale/graph.hpp"
#include "netscale/sampler.hpp"

namespace netscale {

/// kappa x kappa binary adjacency picture of a subgraph under the canonical
/// ordering; parallel edges collapse (simple projection).
struct SignatureImage {
  std::uint32_t kappa = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  std::uint8_t at(std::uint32_t i, std::uint32_t j) const { return pixels[i * kappa + j]; }
};

struct MeanSignature {
  std::uint32_t kappa = 0;
  std::vector<double> pixels;
};

struct FeatureVector {
  double clustering_C = 0.0;
  double neighbor_degree_r = 0.0;
  double connected = 0.0;
  double edge_density = 0.0;
  double max_degree_norm = 0.0;
  double component_count_norm = 0.0;

  std::array<double, 6> as_array() const {
    return {clustering_C, neighbor_degree_r, connected,
            edge_density, max_degree_norm, component_count_norm};
  }
};

namespace detail {

// Sorted, deduplicated neighbor lists (simple projection of the multigraph).
inline std::vector<std::vector<std::uint32_t>> simple_adjacency(const Graph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.vertex_count());
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const auto nbrs = g.neighbors(v);
    adj[v].assign(nbrs.begin(), nbrs.end());
    std::sort(adj[v].begin(), adj[v].end());
    adj[v].erase(std::unique(adj[v].begin(), adj[v].end()), adj[v].end());
  }
  return adj;
}

inline std::uint32_t component_count(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  std::vector<bool> seen(n, false);
  std::uint32_t comps = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++comps;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return comps;
}

inline double clustering_from_simple(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::size_t n = adj.size();
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t d = adj[v].size();
    if (d < 2) continue;
    std::uint64_t closed = 0;  // counts each triangle through v twice
    for (std::uint32_t u : adj[v]) {
      const auto& a = adj[v];
      const auto& b = adj[u];
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++closed; ++i; ++j; }
      }
    }
    total += static_cast<double>(closed) / static_cast<double>(d * (d - 1));
  }
  return total / static_cast<double>(n);
}

inline double avg_neighbor_degree_from_simple(const std::vector<std::vector<std::uint32_t>>& adj) {
  double total = 0.0;
  std::size_t counted = 0;
  for (const auto& nbrs : adj) {
    if (nbrs.empty()) continue;
    double sum = 0.0;
    for (std::uint32_t u : nbrs) sum += static_cast<double>(adj[u].size());
    total += sum / static_cast<double>(nbrs.size());
    ++counted;
  }
  return counted == 0 ? 0.0 : total / static_cast<double>(counted);
}

}  // namespace detail

/// Mean over vertices of closed-triangle fraction, 0 when degree < 2.
/// Computed on the simple projection.
inline double clustering_coefficient(const Graph& g) {
  if (g.vertex_count() == 0) throw Error("clustering_coefficient: empty graph");
  return detail::clustering_from_simple(detail::simple_adjacency(g));
}

/// Mean over vertices of the mean degree of their neighbors (simple
/// projection); degree-0 vertices are excluded, an edgeless graph gives 0.
inline double avg_neighbor_degree(const Graph& g) {
  if (g.vertex_count() == 0) throw Error("avg_neighbor_degree: empty graph");
  return detail::avg_neighbor_degree_from_simple(detail::simple_adjacency(g));
}

/// Deterministic degree-prioritized BFS ordering of a connected subgraph.
/// Root: maximum simple degree, ties to the smallest visit index. Each
/// dequeued parent enqueues its unvisited neighbors by descending degree,
/// ties by visit index.
inline std::vector<std::uint32_t> canonical_order(const SubgraphSample& s) {
  const Graph& g = s.subgraph;
  const std::uint32_t n = g.vertex_count();
  const auto adj = detail::simple_adjacency(g);
  if (detail::component_count(adj) != 1)
    throw Error("canonical_order: disconnected subgraph");

  std::uint32_t root = 0;
  for (std::uint32_t v = 1; v < n; ++v)
    if (adj[v].size() > adj[root].size()) root = v;

  std::vector<std::uint32_t> order;
  order.reserve(n);
  std::vector<bool> visited(n, false);
  order.push_back(root);
  visited[root] = true;
  std::vector<std::uint32_t> batch;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::uint32_t parent = order[head];
    batch.clear();
    for (std::uint32_t w : adj[parent])
      if (!visited[w]) batch.push_back(w);
    std::sort(batch.begin(), batch.end(), [&adj](std::uint32_t a, std::uint32_t b) {
      if (adj[a].size() != adj[b].size()) return adj[a].size() > adj[b].size();
      return a < b;
    });
    for (std::uint32_t w : batch) {
      visited[w] = true;
      order.push_back(w);
    }
  }
  return order;
}

inline SignatureImage signature_image(const SubgraphSample& s) {
  const std::vector<std::uint32_t> order = canonical_order(s);
  const std::uint32_t n = s.subgraph.vertex_count();
  std::vector<std::uint32_t> position(n);
  for (std::uint32_t i = 0; i < n; ++i) position[order[i]] = i;

  SignatureImage img;
  img.kappa = n;
  img.pixels.assign(static_cast<std::size_t>(n) * n, 0);
  for (const Edge& e : s.subgraph.edges()) {
    const std::uint32_t a = position[e.u], b = position[e.v];
    img.pixels[a * n + b] = 1;
    img.pixels[b * n + a] = 1;
  }
  return img;
}

inline FeatureVector feature_vector(const SubgraphSample& s) {
  const Graph& g = s.subgraph;
  const std::uint32_t n = g.vertex_count();
  const auto adj = detail::simple_adjacency(g);

  FeatureVector f;
  f.clustering_C = detail::clustering_from_simple(adj);
  f.neighbor_degree_r = detail::avg_neighbor_degree_from_simple(adj);
  const std::uint32_t comps = detail::component_count(adj);
  f.connected = comps == 1 ? 1.0 : 0.0;
  f.component_count_norm = static_cast<double>(comps) / n;

  std::size_t simple_edges = 0;
  std::size_t max_deg = 0;
  for (const auto& nbrs : adj) {
    simple_edges += nbrs.size();
    max_deg = std::max(max_deg, nbrs.size());
  }
  simple_edges /= 2;
  if (n >= 2) {
    f.edge_density = static_cast<double>(simple_edges) /
                     (static_cast<double>(n) * (n - 1) / 2.0);
    f.max_degree_norm = static_cast<double>(max_deg) / static_cast<double>(n - 1);
  }
  return f;
}

inline MeanSignature mean_signature(std::span<const SignatureImage> images) {
  if (images.empty()) throw Error("mean_signature: no images");
  const std::uint32_t kappa = images.front().kappa;
  MeanSignature mean;
  mean.kappa = kappa;
  mean.pixels.assign(static_cast<std::size_t>(kappa) * kappa, 0.0);
  for (const SignatureImage& img : images) {
    if (img.kappa != kappa) throw Error("mean_signature: mixed kappa");
    for (std::size_t i = 0; i < mean.pixels.size(); ++i) mean.pixels[i] += img.pixels[i];
  }
  for (double& p : mean.pixels) p /= static_cast<double>(images.size());
  return mean;
}

/// 8-bit PGM with pixel = round(255*(1-mean)), so edges render black.
inline void write_pgm(std::ostream& os, const MeanSignature& mean,
                      const std::string& comment = {}) {
  os << "P5\n";
  if (!comment.empty()) os << "# " << comment << "\n";
  os << mean.kappa << " " << mean.kappa << "\n255\n";
  for (double p : mean.pixels) {
    const int value = static_cast<int>(std::lround(255.0 * (1.0 - p)));
    os.put(static_cast<char>(std::clamp(value, 0, 255)));
  }
  if (!os) throw Error("write_pgm: write failed");
}

inline void write_features_csv(std::ostream& os, std::span<const SubgraphSample> samples) {
  os << "C,r,connected,density,maxdeg,comps\n";
  char buf[160];
  for (const SubgraphSample& s : samples) {
    const FeatureVector f = feature_vector(s);
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%g,%.6f,%.6f,%.6f\n", f.clustering_C,
                  f.neighbor_degree_r, f.connected, f.edge_density, f.max_degree_norm,
                  f.component_count_norm);
    os << buf;
  }
}

}  // namespace netscale
