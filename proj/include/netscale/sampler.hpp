#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "netscale/graph.hpp"
#include "netscale/seeds.hpp"

namespace netscale {

/// A kappa-vertex subgraph produced by the random walker: vertices in
/// first-visit order, the induced subgraph renumbered by that order, and the
/// class tag (+1 original, -1 perturbed).
struct SubgraphSample {
  std::vector<std::uint32_t> vertices;
  Graph subgraph;
  int label = +1;
  std::uint32_t walk_steps = 0;
};

struct LabeledDataset {
  std::vector<SubgraphSample> train;
  std::vector<SubgraphSample> test;
  std::uint32_t kappa = 0;
};

/// Random-walk subgraph sampling: start uniform over vertices of nonzero
/// degree, traverse a uniformly random incident edge each step (counting
/// multiplicity), collect vertices on first visit until kappa are seen.
/// A walk that fails to reach kappa distinct vertices within 100*kappa steps
/// restarts from a fresh uniform start; 1000 consecutive restarts abort.
inline SubgraphSample sample_subgraph(const Graph& g, std::uint32_t kappa, std::uint64_t seed) {
  const std::uint32_t n = g.vertex_count();
  if (kappa < 2 || kappa > n) throw Error("sample_subgraph: kappa out of range");

  Rng rng(seed);
  std::vector<std::uint32_t> start_pool;  // built lazily if rejection stalls

  auto pick_start = [&]() -> std::uint32_t {
    for (int tries = 0; tries < 64; ++tries) {
      const std::uint32_t v = static_cast<std::uint32_t>(rng.below(n));
      if (g.degree(v) > 0) return v;
    }
    if (start_pool.empty()) {
      for (std::uint32_t v = 0; v < n; ++v)
        if (g.degree(v) > 0) start_pool.push_back(v);
      if (start_pool.empty()) throw Error("sample_subgraph: graph has no edges");
    }
    return start_pool[rng.below(start_pool.size())];
  };

  const std::uint64_t step_cap = 100ULL * kappa;
  std::vector<std::uint32_t> visited;
  std::unordered_map<std::uint32_t, std::uint32_t> pos;
  visited.reserve(kappa);
  pos.reserve(2 * kappa);

  for (int restart = 0; restart < 1000; ++restart) {
    visited.clear();
    pos.clear();
    std::uint32_t current = pick_start();
    visited.push_back(current);
    pos.emplace(current, 0u);
    std::uint64_t steps = 0;
    while (visited.size() < kappa && steps < step_cap) {
      ++steps;
      const auto nbrs = g.neighbors(current);
      current = nbrs[rng.below(nbrs.size())];
      if (pos.emplace(current, static_cast<std::uint32_t>(visited.size())).second)
        visited.push_back(current);
    }
    if (visited.size() == kappa) {
      SubgraphSample s;
      s.vertices = visited;
      s.subgraph = induced_subgraph(g, s.vertices);
      s.walk_steps = static_cast<std::uint32_t>(steps);
      return s;
    }
  }
  throw Error("sample_subgraph: no component of size " + std::to_string(kappa) + " reachable");
}

/// Independent draws with per-index seed derivation from (seed, index).
inline std::vector<SubgraphSample> draw_samples(const Graph& g, std::uint32_t kappa,
                                                std::uint64_t count, std::uint64_t seed) {
  std::vector<SubgraphSample> samples;
  samples.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    samples.push_back(sample_subgraph(g, kappa, derive_seed(seed, {seed_tag::sample, i})));
  return samples;
}

/// Balanced labeled dataset from independent draws of the two graphs.
/// Per-sample seeds derive from (seed, label, index), so the construction
/// parallelizes without changing results.
inline LabeledDataset build_dataset(const Graph& g_original, const Graph& g_perturbed,
                                    std::uint32_t kappa, std::uint32_t samples_per_class,
                                    double train_fraction, std::uint64_t seed) {
  if (train_fraction < 0.0 || train_fraction > 1.0)
    throw Error("build_dataset: train_fraction must be in [0,1]");
  LabeledDataset ds;
  ds.kappa = kappa;
  const std::uint32_t n_train =
      static_cast<std::uint32_t>(train_fraction * samples_per_class);

  auto draw_class = [&](const Graph& g, int label, const char* name) {
    for (std::uint32_t i = 0; i < samples_per_class; ++i) {
      const std::uint64_t s =
          derive_seed(seed, {seed_tag::sample, static_cast<std::uint64_t>(label == +1 ? 1 : 2), i});
      try {
        SubgraphSample sample = sample_subgraph(g, kappa, s);
        sample.label = label;
        (i < n_train ? ds.train : ds.test).push_back(std::move(sample));
      } catch (const Error& e) {
        throw Error(std::string("build_dataset: ") + name + " graph: " + e.what());
      }
    }
  };
  draw_class(g_original, +1, "original");
  draw_class(g_perturbed, -1, "perturbed");

  // Keep each split ordered class-contiguously (+1 block then -1 block).
  auto by_label = [](const SubgraphSample& a, const SubgraphSample& b) {
    return a.label > b.label;
  };
  std::stable_sort(ds.train.begin(), ds.train.end(), by_label);
  std::stable_sort(ds.test.begin(), ds.test.end(), by_label);
  return ds;
}

inline constexpr char kSampleStreamMagic[4] = {'N', 'S', 'D', 'S'};
inline constexpr std::uint32_t kSampleStreamVersion = 1;

/// Length-prefixed binary stream of samples: per record the label, kappa,
/// vertex list (source ids) and the induced edge list (renumbered).
inline void write_sample_stream(std::ostream& os, const std::vector<SubgraphSample>& samples,
                                std::uint32_t kappa) {
  os.write(kSampleStreamMagic, 4);
  detail::put_u32(os, kSampleStreamVersion);
  detail::put_u32(os, kappa);
  detail::put_u64(os, samples.size());
  for (const SubgraphSample& s : samples) {
    detail::put_u32(os, s.label == +1 ? 1u : 0u);
    detail::put_u32(os, s.walk_steps);
    detail::put_u32(os, static_cast<std::uint32_t>(s.vertices.size()));
    for (std::uint32_t v : s.vertices) detail::put_u32(os, v);
    detail::put_u32(os, static_cast<std::uint32_t>(s.subgraph.edge_count()));
    for (const Edge& e : s.subgraph.edges()) {
      detail::put_u32(os, e.u);
      detail::put_u32(os, e.v);
    }
  }
  if (!os) throw Error("sample stream: write failed");
}

inline std::vector<SubgraphSample> read_sample_stream(std::istream& is, std::uint32_t* kappa_out = nullptr) {
  char magic[4];
  is.read(magic, 4);
  if (!is || !std::equal(magic, magic + 4, kSampleStreamMagic))
    throw Error("sample stream: bad magic");
  if (detail::get_u32(is) != kSampleStreamVersion)
    throw Error("sample stream: unsupported version");
  const std::uint32_t kappa = detail::get_u32(is);
  if (kappa_out) *kappa_out = kappa;
  const std::uint64_t count = detail::get_u64(is);
  std::vector<SubgraphSample> samples;
  samples.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    SubgraphSample s;
    s.label = detail::get_u32(is) ? +1 : -1;
    s.walk_steps = detail::get_u32(is);
    const std::uint32_t nv = detail::get_u32(is);
    s.vertices.resize(nv);
    for (std::uint32_t k = 0; k < nv; ++k) s.vertices[k] = detail::get_u32(is);
    const std::uint32_t ne = detail::get_u32(is);
    std::vector<Edge> edges(ne);
    for (std::uint32_t k = 0; k < ne; ++k) {
      edges[k].u = detail::get_u32(is);
      edges[k].v = detail::get_u32(is);
    }
    s.subgraph = Graph(nv, std::move(edges));
    samples.push_back(std::move(s));
  }
  return samples;
}

/// Cache-file stem for a sampled dataset.
inline std::string sample_cache_name(std::uint64_t graph_hash, std::uint32_t kappa,
                                     std::uint64_t count, std::uint64_t seed) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "samples_%016llx_k%u_c%llu_s%llu.nss",
                static_cast<unsigned long long>(graph_hash), kappa,
                static_cast<unsigned long long>(count), static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace netscale
