#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "netscale/classify.hpp"
#include "netscale/graph.hpp"
#include "netscale/perturb.hpp"
#include "netscale/seeds.hpp"

namespace netscale {

struct ScanResult {
  std::string network_id;
  std::vector<std::uint32_t> kappa_grid;
  std::vector<PerturbationSpec> delta_grid;
  std::vector<std::optional<AccuracyEstimate>> cells;  // kappa-major
  std::vector<std::string> failures;
  EstimateConfig config;
  std::uint64_t seed = 0;

  const std::optional<AccuracyEstimate>& cell(std::size_t ki, std::size_t di) const {
    return cells[ki * delta_grid.size() + di];
  }
  std::optional<AccuracyEstimate>& cell(std::size_t ki, std::size_t di) {
    return cells[ki * delta_grid.size() + di];
  }

  std::optional<std::size_t> delta_index(const std::string& label) const {
    for (std::size_t d = 0; d < delta_grid.size(); ++d)
      if (delta_grid[d].label() == label) return d;
    return std::nullopt;
  }
};

struct ScanOptions {
  std::uint32_t jobs = 1;
  // Cache lookup; a hit skips the cell's computation.
  std::function<std::optional<AccuracyEstimate>(std::uint32_t kappa, const PerturbationSpec&)>
      lookup;
  // Called once per freshly computed cell (serialized by run_scan).
  std::function<void(const AccuracyEstimate&)> on_cell;
};

/// One estimate_delta per (kappa, delta) cell. Cells are independent; failures
/// are recorded and the scan continues. With jobs > 1 the cells fan out over a
/// worker pool; per-cell seeds derive from the base seed, so the grid content
/// is schedule-independent.
inline ScanResult run_scan(const Graph& g, const std::string& network_id,
                           const std::vector<std::uint32_t>& kappa_grid,
                           const std::vector<PerturbationSpec>& delta_grid,
                           const EstimateConfig& cfg, std::uint64_t seed,
                           const ScanOptions& opts = {}) {
  if (kappa_grid.empty() || delta_grid.empty()) throw Error("run_scan: empty grid");
  for (std::size_t i = 1; i < kappa_grid.size(); ++i)
    if (kappa_grid[i] <= kappa_grid[i - 1])
      throw Error("run_scan: kappa grid must be strictly increasing");

  ScanResult scan;
  scan.network_id = network_id;
  scan.kappa_grid = kappa_grid;
  scan.delta_grid = delta_grid;
  scan.cells.resize(kappa_grid.size() * delta_grid.size());
  scan.config = cfg;
  scan.seed = seed;

  const std::size_t total = scan.cells.size();
  std::mutex mu;
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      const std::size_t ki = idx / delta_grid.size();
      const std::size_t di = idx % delta_grid.size();
      const std::uint32_t kappa = kappa_grid[ki];
      const PerturbationSpec& spec = delta_grid[di];
      if (opts.lookup) {
        if (auto hit = opts.lookup(kappa, spec)) {
          std::lock_guard<std::mutex> lock(mu);
          scan.cells[idx] = std::move(hit);
          continue;
        }
      }
      try {
        AccuracyEstimate est = estimate_delta(g, kappa, spec, cfg, seed);
        std::lock_guard<std::mutex> lock(mu);
        scan.cells[idx] = est;
        if (opts.on_cell) opts.on_cell(est);
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(mu);
        scan.failures.push_back("cell kappa=" + std::to_string(kappa) + " delta=" +
                                spec.label() + ": " + e.what());
      }
    }
  };

  const std::uint32_t jobs = std::max<std::uint32_t>(1, opts.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::uint32_t t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::sort(scan.failures.begin(), scan.failures.end());  // schedule-independent
  return scan;
}

/// Smallest grid kappa whose mean accuracy reaches tau in the given delta
/// column; nullopt means beyond the grid.
inline std::optional<std::uint32_t> intrinsic_scale(const ScanResult& scan, double tau,
                                                    std::size_t delta_index) {
  if (!(tau > 0.5) || !(tau < 1.0)) throw Error("intrinsic_scale: tau must be in (0.5, 1)");
  if (delta_index >= scan.delta_grid.size())
    throw Error("intrinsic_scale: delta column not present");
  for (std::size_t ki = 0; ki < scan.kappa_grid.size(); ++ki) {
    const auto& cell = scan.cell(ki, delta_index);
    if (cell && cell->accuracy_mean >= tau) return scan.kappa_grid[ki];
  }
  return std::nullopt;
}

/// gamma = -ln(acc - 0.5); defined only above chance.
inline double gamma_from_accuracy(double accuracy) {
  if (accuracy <= 0.5) throw Error("robustness: accuracy at or below chance");
  return -std::log(accuracy - 0.5);
}

/// Robustness at scale kappa, from the delta=10% column. nullopt means the
/// estimate sits at or below chance there.
inline std::optional<double> robustness(const ScanResult& scan, std::uint32_t kappa) {
  const auto di = scan.delta_index("0.1");
  if (!di) throw Error("robustness: delta=10% column not present");
  const auto ki_it = std::find(scan.kappa_grid.begin(), scan.kappa_grid.end(), kappa);
  if (ki_it == scan.kappa_grid.end()) throw Error("robustness: kappa not in grid");
  const auto& cell = scan.cell(ki_it - scan.kappa_grid.begin(), *di);
  if (!cell) throw Error("robustness: cell failed");
  if (cell->accuracy_mean <= 0.5) return std::nullopt;
  return gamma_from_accuracy(cell->accuracy_mean);
}

/// beta = mean squared degree / mean degree.
inline double resilience(const Graph& g) {
  if (g.edge_count() == 0) throw Error("resilience: edgeless graph");
  const DegreeStats s = degree_stats(g);
  return s.avg_sq_degree / s.avg_degree;
}

/// 1 - max accuracy in the delta=inf column.
inline double accuracy_gap(const ScanResult& scan) {
  std::optional<std::size_t> inf_index;
  for (std::size_t d = 0; d < scan.delta_grid.size(); ++d)
    if (scan.delta_grid[d].infinite) inf_index = d;
  if (!inf_index) throw Error("accuracy_gap: delta=inf column not present");
  std::optional<double> best;
  for (std::size_t ki = 0; ki < scan.kappa_grid.size(); ++ki) {
    const auto& cell = scan.cell(ki, *inf_index);
    if (cell && (!best || cell->accuracy_mean > *best)) best = cell->accuracy_mean;
  }
  if (!best) throw Error("accuracy_gap: no successful cells in delta=inf column");
  return 1.0 - *best;
}

struct AuxMeasures {
  double avg_degree = 0.0;
  double avg_path_length = 0.0;
  std::uint32_t diameter_est = 0;  // lower bound from double-sweep BFS
  std::optional<double> cluster_size;
};

/// Average degree (exact), mean BFS distance over a sampled fraction of
/// vertex pairs, and a double-sweep diameter lower bound. Path and diameter
/// are measured on the largest component.
inline AuxMeasures aux_measures(const Graph& g, double pair_fraction,
                                std::uint32_t bfs_sources, std::uint64_t seed) {
  if (!(pair_fraction > 0.0) || pair_fraction > 1.0)
    throw Error("aux_measures: pair_fraction must be in (0,1]");
  if (bfs_sources < 1) throw Error("aux_measures: bfs_sources must be >= 1");
  const std::uint32_t n = g.vertex_count();
  if (n == 0) throw Error("aux_measures: empty graph");

  // largest component
  std::vector<std::int32_t> comp(n, -1);
  std::int32_t comps = 0;
  std::vector<std::uint32_t> stack;
  std::vector<std::size_t> comp_size;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = comps;
    comp_size.push_back(1);
    stack.push_back(s);
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t w : g.neighbors(u))
        if (comp[w] < 0) {
          comp[w] = comps;
          ++comp_size[comps];
          stack.push_back(w);
        }
    }
    ++comps;
  }
  std::int32_t big = 0;
  for (std::int32_t c = 1; c < comps; ++c)
    if (comp_size[c] > comp_size[big]) big = c;
  std::vector<std::uint32_t> members;
  members.reserve(comp_size[big]);
  for (std::uint32_t v = 0; v < n; ++v)
    if (comp[v] == big) members.push_back(v);
  if (members.size() < 2) throw Error("aux_measures: pair sample empty");

  AuxMeasures out;
  out.avg_degree = 2.0 * static_cast<double>(g.edge_count()) / n;

  std::vector<std::int32_t> dist(n);
  std::vector<std::uint32_t> queue(members.size());
  auto bfs = [&](std::uint32_t src, std::uint64_t* sum, std::uint64_t* cnt) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    queue[0] = src;
    std::size_t head = 0, tail = 1;
    std::uint32_t far = src;
    while (head < tail) {
      const std::uint32_t u = queue[head++];
      for (std::uint32_t w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue[tail++] = w;
          if (dist[w] > dist[far]) far = w;
          if (sum) {
            *sum += static_cast<std::uint64_t>(dist[w]);
            ++*cnt;
          }
        }
      }
    }
    return far;
  };

  Rng rng(derive_seed(seed, {seed_tag::aux}));
  const std::size_t nc = members.size();
  std::size_t sources = static_cast<std::size_t>(
      std::ceil(pair_fraction * static_cast<double>(nc)));
  sources = std::clamp<std::size_t>(sources, 1, nc);

  // partial Fisher-Yates for a uniform source sample without replacement
  std::vector<std::uint32_t> pool = members;
  std::uint64_t sum = 0, cnt = 0;
  std::uint32_t max_seen = 0;
  for (std::size_t i = 0; i < sources; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(nc - i));
    std::swap(pool[i], pool[j]);
    const std::uint32_t far = bfs(pool[i], &sum, &cnt);
    max_seen = std::max<std::uint32_t>(max_seen, static_cast<std::uint32_t>(dist[far]));
  }
  if (cnt == 0) throw Error("aux_measures: pair sample empty");
  out.avg_path_length = static_cast<double>(sum) / static_cast<double>(cnt);

  std::uint32_t best = max_seen;
  for (std::uint32_t s = 0; s < bfs_sources; ++s) {
    const std::uint32_t start = members[rng.below(nc)];
    const std::uint32_t far = bfs(start, nullptr, nullptr);
    const std::uint32_t opposite = bfs(far, nullptr, nullptr);
    best = std::max<std::uint32_t>(best, static_cast<std::uint32_t>(dist[opposite]));
  }
  out.diameter_est = best;
  return out;
}

inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw Error("pearson: need two sequences of equal length >= 2");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error("pearson: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

struct ScaleReport {
  std::string network_id;
  std::string classifier;
  std::vector<double> taus;
  // kappa_star[ti][di]: nullopt renders as "*" (beyond grid)
  std::vector<std::vector<std::optional<std::uint32_t>>> kappa_star;
  std::vector<std::pair<std::uint32_t, std::optional<double>>> gamma;  // per grid kappa
  double beta = 0.0;
  std::optional<double> gap;
  std::optional<AuxMeasures> aux;
  std::map<std::string, double> correlations;
  std::vector<std::string> delta_labels;
  std::vector<std::string> failures;
};

inline ScaleReport make_report(const ScanResult& scan, const Graph& g,
                               const std::vector<double>& taus,
                               std::optional<AuxMeasures> aux = std::nullopt,
                               std::optional<double> cluster_size = std::nullopt) {
  ScaleReport rep;
  rep.network_id = scan.network_id;
  rep.classifier = scan.config.tag();
  rep.taus = taus;
  rep.failures = scan.failures;
  for (const auto& d : scan.delta_grid) rep.delta_labels.push_back(d.label());
  for (double tau : taus) {
    std::vector<std::optional<std::uint32_t>> row;
    for (std::size_t di = 0; di < scan.delta_grid.size(); ++di)
      row.push_back(intrinsic_scale(scan, tau, di));
    rep.kappa_star.push_back(std::move(row));
  }
  if (scan.delta_index("0.1")) {
    for (std::uint32_t kappa : scan.kappa_grid) {
      try {
        rep.gamma.emplace_back(kappa, robustness(scan, kappa));
      } catch (const Error&) {
        // failed cell: skip the row
      }
    }
  }
  rep.beta = resilience(g);
  try {
    rep.gap = accuracy_gap(scan);
  } catch (const Error&) {
    rep.gap = std::nullopt;
  }
  if (aux) {
    rep.aux = *aux;
    if (cluster_size) rep.aux->cluster_size = cluster_size;
  }
  return rep;
}

namespace detail {

inline std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

}  // namespace detail

/// Key-value block (stable key order) followed by the kappa* table; "*"
/// marks beyond-grid entries. Byte-stable for identical inputs.
inline void write_report(std::ostream& os, const ScaleReport& rep) {
  os << "network = " << rep.network_id << "\n";
  os << "classifier = " << rep.classifier << "\n";
  os << "beta = " << detail::fmt(rep.beta, 4) << "\n";
  os << "accuracy_gap = " << (rep.gap ? detail::fmt(*rep.gap, 4) : std::string("n/a")) << "\n";
  if (rep.aux) {
    os << "avg_degree = " << detail::fmt(rep.aux->avg_degree, 4) << "\n";
    os << "avg_path_length = " << detail::fmt(rep.aux->avg_path_length, 4) << "\n";
    os << "diameter_est = " << rep.aux->diameter_est << "\n";
    if (rep.aux->cluster_size)
      os << "cluster_size = " << detail::fmt(*rep.aux->cluster_size, 4) << "\n";
  }
  for (const auto& [name, value] : rep.correlations)
    os << "corr_" << name << " = " << detail::fmt(value, 4) << "\n";

  os << "\nkappa_star (rows: tau; columns: delta; * = beyond grid)\n";
  os << "tau";
  for (const auto& label : rep.delta_labels) os << "\t" << label;
  os << "\n";
  for (std::size_t ti = 0; ti < rep.taus.size(); ++ti) {
    os << detail::fmt(rep.taus[ti], 2);
    for (const auto& ks : rep.kappa_star[ti]) {
      if (ks)
        os << "\t" << *ks;
      else
        os << "\t*";
    }
    os << "\n";
  }

  if (!rep.gamma.empty()) {
    os << "\nrobustness gamma(kappa) from delta=10%\n";
    for (const auto& [kappa, gamma] : rep.gamma) {
      os << kappa << "\t"
         << (gamma ? detail::fmt(*gamma, 4) : std::string("at-or-below-chance")) << "\n";
    }
  }

  if (!rep.failures.empty()) {
    os << "\nfailed cells\n";
    for (const auto& f : rep.failures) os << f << "\n";
  }
}

inline constexpr char kScanCsvHeader[] =
    "network,kappa,delta,repeat_count,accuracy_mean,accuracy_std,classifier,seed";

inline void write_scan_csv_row(std::ostream& os, const std::string& network,
                               const AccuracyEstimate& est, std::uint64_t seed) {
  os << network << "," << est.kappa << "," << est.delta.label() << "," << est.repeats << ","
     << detail::fmt(est.accuracy_mean) << "," << detail::fmt(est.accuracy_std) << ","
     << est.classifier << "," << seed << "\n";
}

/// Full scan CSV: config snapshot as '#' comments, the pinned header, one row
/// per successful cell in grid order.
inline void write_scan_csv(std::ostream& os, const ScanResult& scan,
                           const std::string& config_snapshot = {}) {
  os << "# netscale scan v1\n";
  if (!config_snapshot.empty()) {
    std::istringstream lines(config_snapshot);
    std::string line;
    while (std::getline(lines, line)) os << "# " << line << "\n";
  }
  os << kScanCsvHeader << "\n";
  for (std::size_t ki = 0; ki < scan.kappa_grid.size(); ++ki)
    for (std::size_t di = 0; di < scan.delta_grid.size(); ++di)
      if (const auto& cell = scan.cell(ki, di))
        write_scan_csv_row(os, scan.network_id, *cell, scan.seed);
}

struct ScanCsvRow {
  std::string network;
  std::uint32_t kappa = 0;
  std::string delta_label;
  std::uint32_t repeats = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  std::string classifier;
  std::uint64_t seed = 0;
};

inline std::vector<ScanCsvRow> read_scan_csv(std::istream& is) {
  std::vector<ScanCsvRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("network,", 0) == 0) continue;  // header
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 8) throw Error("scan csv: malformed row: " + line);
    ScanCsvRow row;
    row.network = fields[0];
    row.kappa = static_cast<std::uint32_t>(std::stoul(fields[1]));
    row.delta_label = fields[2];
    row.repeats = static_cast<std::uint32_t>(std::stoul(fields[3]));
    row.accuracy_mean = std::stod(fields[4]);
    row.accuracy_std = std::stod(fields[5]);
    row.classifier = fields[6];
    row.seed = std::stoull(fields[7]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace netscale
