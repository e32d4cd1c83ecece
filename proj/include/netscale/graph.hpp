#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace netscale {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  friend bool operator==(Edge a, Edge b) { return a.u == b.u && a.v == b.v; }
};

/// Undirected multigraph. Parallel edges are allowed, self-loops are not.
/// Immutable after construction; adjacency is stored CSR-style with one
/// entry per edge endpoint, so parallel edges show up with multiplicity.
class Graph {
 public:
  Graph() = default;

  Graph(std::uint32_t vertex_count, std::vector<Edge> edge_list)
      : n_(vertex_count), edges_(std::move(edge_list)) {
    for (const Edge& e : edges_) {
      if (e.u >= n_ || e.v >= n_) throw Error("graph: edge endpoint out of range");
      if (e.u == e.v) throw Error("graph: self-loops are not allowed");
    }
    build_adjacency();
  }

  std::uint32_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::uint32_t degree(std::uint32_t v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }

  // Neighbors of v counting multiplicity; one entry per incident edge.
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

 private:
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i <= n_; ++i) offsets_[i] += offsets_[i - 1];
    adj_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
      adj_[cursor[e.u]++] = e.v;
      adj_[cursor[e.v]++] = e.u;
    }
  }

  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> adj_;
};

struct DegreeStats {
  std::uint32_t n = 0;
  std::size_t m = 0;
  double avg_degree = 0.0;
  double avg_sq_degree = 0.0;
  std::map<std::uint32_t, std::uint32_t> degree_histogram;
};

inline DegreeStats degree_stats(const Graph& g) {
  if (g.vertex_count() == 0) throw Error("degree_stats: empty graph");
  DegreeStats s;
  s.n = g.vertex_count();
  s.m = g.edge_count();
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint32_t v = 0; v < s.n; ++v) {
    const double d = g.degree(v);
    sum += d;
    sum_sq += d * d;
    ++s.degree_histogram[g.degree(v)];
  }
  s.avg_degree = sum / s.n;
  s.avg_sq_degree = sum_sq / s.n;
  return s;
}

inline bool is_connected(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  if (n == 0) throw Error("is_connected: empty graph");
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::uint32_t reached = 1;
  while (!stack.empty()) {
    const std::uint32_t u = stack.back();
    stack.pop_back();
    for (std::uint32_t w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

/// Subgraph induced by `vertices`, renumbered by position in the input
/// sequence. Every edge with both endpoints in the set is kept with its
/// multiplicity.
inline Graph induced_subgraph(const Graph& g, std::span<const std::uint32_t> vertices) {
  std::unordered_map<std::uint32_t, std::uint32_t> pos;
  pos.reserve(vertices.size() * 2);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::uint32_t v = vertices[i];
    if (v >= g.vertex_count()) throw Error("induced_subgraph: vertex out of range");
    if (!pos.emplace(v, static_cast<std::uint32_t>(i)).second)
      throw Error("induced_subgraph: duplicate vertex");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::uint32_t pu = static_cast<std::uint32_t>(i);
    for (std::uint32_t w : g.neighbors(vertices[i])) {
      auto it = pos.find(w);
      if (it != pos.end() && pu < it->second) edges.push_back({pu, it->second});
    }
  }
  return Graph(static_cast<std::uint32_t>(vertices.size()), std::move(edges));
}

struct ParseResult {
  Graph graph;
  std::vector<std::int64_t> vertex_ids;  // dense id -> original token
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

/// Edge-list ingestion: one edge per line, two integer tokens, '#' comments.
/// Vertices are renumbered densely in first-appearance order. Self-loop
/// lines are dropped (counted); with `dedupe` set, repeated undirected pairs
/// collapse to one edge.
inline ParseResult parse_edge_list(std::istream& in, bool dedupe = true) {
  ParseResult out;
  std::unordered_map<std::int64_t, std::uint32_t> id_map;
  std::unordered_set<std::uint64_t> seen_pairs;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  bool any_content = false;

  auto intern = [&](std::int64_t token) {
    auto it = id_map.find(token);
    if (it != id_map.end()) return it->second;
    const std::uint32_t id = static_cast<std::uint32_t>(out.vertex_ids.size());
    id_map.emplace(token, id);
    out.vertex_ids.push_back(token);
    return id;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    any_content = true;

    std::int64_t tok[2];
    int ntok = 0;
    std::size_t i = start;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      std::size_t end = i;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
      if (ntok >= 2) {
        throw ParseError("parse_edge_list: line " + std::to_string(line_no) +
                         ": expected 2 tokens");
      }
      try {
        std::size_t used = 0;
        tok[ntok] = std::stoll(line.substr(i, end - i), &used);
        if (used != end - i) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("parse_edge_list: line " + std::to_string(line_no) +
                         ": bad vertex token");
      }
      ++ntok;
      i = end;
    }
    if (ntok != 2) {
      throw ParseError("parse_edge_list: line " + std::to_string(line_no) +
                       ": expected 2 tokens");
    }

    const std::uint32_t a = intern(tok[0]);
    const std::uint32_t b = intern(tok[1]);
    if (a == b) {
      ++out.self_loops_dropped;
      continue;
    }
    if (dedupe) {
      const std::uint64_t key =
          (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
      if (!seen_pairs.insert(key).second) {
        ++out.duplicates_collapsed;
        continue;
      }
    }
    edges.push_back({a, b});
  }
  if (!any_content) throw ParseError("parse_edge_list: empty input");
  out.graph = Graph(static_cast<std::uint32_t>(out.vertex_ids.size()), std::move(edges));
  return out;
}

inline std::uint64_t graph_hash(const Graph& g) {
  // FNV-1a over (n, m, normalized edge sequence).
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(g.vertex_count());
  mix(g.edge_count());
  for (const Edge& e : g.edges()) {
    mix((static_cast<std::uint64_t>(std::min(e.u, e.v)) << 32) | std::max(e.u, e.v));
  }
  return h;
}

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  os.write(b, 4);
}

inline std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw Error("binary graph: truncated stream");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
  put_u32(os, static_cast<std::uint32_t>(v & 0xffffffffULL));
  put_u32(os, static_cast<std::uint32_t>(v >> 32));
}

inline std::uint64_t get_u64(std::istream& is) {
  const std::uint64_t lo = get_u32(is);
  const std::uint64_t hi = get_u32(is);
  return lo | (hi << 32);
}

}  // namespace detail

inline constexpr char kGraphMagic[4] = {'N', 'S', 'G', 'B'};
inline constexpr std::uint32_t kGraphFormatVersion = 1;

inline void write_graph_binary(std::ostream& os, const Graph& g) {
  os.write(kGraphMagic, 4);
  detail::put_u32(os, kGraphFormatVersion);
  detail::put_u32(os, g.vertex_count());
  detail::put_u32(os, static_cast<std::uint32_t>(g.edge_count()));
  for (const Edge& e : g.edges()) {
    detail::put_u32(os, e.u);
    detail::put_u32(os, e.v);
  }
  if (!os) throw Error("binary graph: write failed");
}

inline Graph read_graph_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || !std::equal(magic, magic + 4, kGraphMagic))
    throw Error("binary graph: bad magic");
  const std::uint32_t version = detail::get_u32(is);
  if (version != kGraphFormatVersion) throw Error("binary graph: unsupported version");
  const std::uint32_t n = detail::get_u32(is);
  const std::uint32_t m = detail::get_u32(is);
  std::vector<Edge> edges(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    edges[i].u = detail::get_u32(is);
    edges[i].v = detail::get_u32(is);
  }
  return Graph(n, std::move(edges));
}

}  // namespace netscale
