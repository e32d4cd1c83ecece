#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "netscale/graph.hpp"
#include "netscale/seeds.hpp"

namespace netscale {

class MixingFailure : public Error {
 public:
  using Error::Error;
};

/// Extent of a degree-preserving randomization. `delta` is a fraction of the
/// edge count; infinity is realized as Q successful swaps per edge.
struct PerturbationSpec {
  double delta = 0.0;
  bool infinite = false;
  std::uint64_t swap_count = 0;
  std::uint32_t infinity_multiplier = 1;

  static PerturbationSpec fraction(double f, std::size_t m) {
    if (f < 0.0) throw Error("perturbation: negative fraction");
    PerturbationSpec s;
    s.delta = f;
    s.swap_count = static_cast<std::uint64_t>(std::ceil(f * static_cast<double>(m)));
    return s;
  }

  static PerturbationSpec infinity(std::uint32_t q, std::size_t m) {
    if (q < 1) throw Error("perturbation: infinity multiplier must be >= 1");
    PerturbationSpec s;
    s.infinite = true;
    s.infinity_multiplier = q;
    s.swap_count = static_cast<std::uint64_t>(q) * m;
    return s;
  }

  // Column label used in CSV output; infinity is the literal "inf".
  std::string label() const {
    if (infinite) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", delta);
    return buf;
  }
};

struct SwapOutcome {
  std::uint64_t attempted = 0;
  std::uint64_t succeeded = 0;
  std::uint64_t rejected_shared_vertex = 0;
};

/// One edge swap (u,v),(x,y) -> (u,x),(v,y) after applying the per-edge
/// orientation flips. Returns nullopt when the four endpoints are not
/// distinct (the move is rejected, never fatal).
inline std::optional<Graph> edge_swap(const Graph& g, std::size_t e1, std::size_t e2,
                                      bool flip1, bool flip2) {
  if (e1 == e2 || e1 >= g.edge_count() || e2 >= g.edge_count())
    throw Error("edge_swap: invalid edge indices");
  std::uint32_t u = g.edges()[e1].u, v = g.edges()[e1].v;
  std::uint32_t x = g.edges()[e2].u, y = g.edges()[e2].v;
  if (flip1) std::swap(u, v);
  if (flip2) std::swap(x, y);
  if (u == x || u == y || v == x || v == y) return std::nullopt;
  std::vector<Edge> edges = g.edges();
  edges[e1] = {u, x};
  edges[e2] = {v, y};
  return Graph(g.vertex_count(), std::move(edges));
}

/// Degree-preserving randomization: exactly spec.swap_count successful swaps,
/// edge pairs drawn uniformly without replacement per attempt, endpoint
/// orientations flipped by independent fair coins. Deterministic per seed.
/// Throws MixingFailure once attempts exceed 100x the requested swaps.
inline std::pair<Graph, SwapOutcome> perturb(const Graph& g, const PerturbationSpec& spec,
                                             std::uint64_t seed) {
  const std::size_t m = g.edge_count();
  if (m < 2 && spec.swap_count > 0) throw Error("perturb: need at least 2 edges");

  std::vector<Edge> edges = g.edges();
  SwapOutcome outcome;
  if (spec.swap_count == 0) return {Graph(g.vertex_count(), std::move(edges)), outcome};

  Rng rng(derive_seed(seed, {seed_tag::perturb}));
  const std::uint64_t budget = 100 * spec.swap_count;
  while (outcome.succeeded < spec.swap_count) {
    if (outcome.attempted >= budget) {
      throw MixingFailure("perturb: mixing failure after " + std::to_string(outcome.attempted) +
                          " attempts, " +
                          std::to_string(spec.swap_count - outcome.succeeded) +
                          " of " + std::to_string(spec.swap_count) + " swaps missing");
    }
    ++outcome.attempted;
    const std::size_t i = static_cast<std::size_t>(rng.below(m));
    std::size_t j = static_cast<std::size_t>(rng.below(m - 1));
    if (j >= i) ++j;
    std::uint32_t u = edges[i].u, v = edges[i].v;
    std::uint32_t x = edges[j].u, y = edges[j].v;
    if (rng.coin()) std::swap(u, v);
    if (rng.coin()) std::swap(x, y);
    if (u == x || u == y || v == x || v == y) {
      ++outcome.rejected_shared_vertex;
      continue;
    }
    edges[i] = {u, x};
    edges[j] = {v, y};
    ++outcome.succeeded;
  }
  return {Graph(g.vertex_count(), std::move(edges)), outcome};
}

inline std::vector<PerturbationSpec> delta_grid(std::size_t m, const std::vector<double>& fractions,
                                                bool include_infinity, std::uint32_t q) {
  std::vector<PerturbationSpec> grid;
  grid.reserve(fractions.size() + (include_infinity ? 1 : 0));
  for (double f : fractions) grid.push_back(PerturbationSpec::fraction(f, m));
  if (include_infinity) grid.push_back(PerturbationSpec::infinity(q, m));
  return grid;
}

}  // namespace netscale
