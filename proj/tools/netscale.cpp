// netscale command-line driver: perturb / eval / scan / report / tree-demo /
// oracle pipelines over edge-list networks, with deterministic seeding and
// resumable caching.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "netscale/netscale.hpp"

namespace fs = std::filesystem;
using namespace netscale;

namespace {

struct RunConfig {
  std::string input;
  std::string network_id;
  std::uint64_t seed = 1;
  std::string cache_dir = "cache";
  std::string out_dir = "out";
  std::string classifier = "bayes_Cr";
  std::uint32_t samples = 10000;
  std::uint32_t repeats = 10;
  double train_fraction = 0.5;
  std::uint32_t bins = 20;
  std::uint32_t infinity_multiplier = 20;
  std::uint32_t jobs = 1;
  std::string kappa_grid = "4..64";
  std::string delta_grid = "10,20,30,40,50,inf";
  std::vector<double> taus = {0.7, 0.9, 0.95};
  double pair_fraction = 0.1;
  std::uint32_t bfs_sources = 4;

  EstimateConfig estimate_config() const {
    EstimateConfig cfg;
    auto [kind, features] = parse_classifier_tag(classifier);
    cfg.kind = kind;
    cfg.features = std::move(features);
    cfg.bins = bins;
    cfg.samples_per_class = samples;
    cfg.train_fraction = train_fraction;
    cfg.repeats = repeats;
    return cfg;
  }

  std::string snapshot() const {
    std::ostringstream os;
    os << "input=" << input << "\nnetwork=" << network_id << "\nseed=" << seed
       << "\nclassifier=" << classifier << "\nsamples=" << samples
       << "\nrepeats=" << repeats << "\ntrain_fraction=" << train_fraction
       << "\nbins=" << bins << "\ninfinity_multiplier=" << infinity_multiplier
       << "\nkappa_grid=" << kappa_grid << "\ndelta_grid=" << delta_grid;
    return os.str();
  }
};

std::vector<std::uint32_t> parse_kappa_grid(const std::string& text) {
  // comma-separated entries; "a..b" and "a..b:step" expand to ranges
  std::vector<std::uint32_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      grid.push_back(static_cast<std::uint32_t>(std::stoul(item)));
      continue;
    }
    const std::uint32_t lo = static_cast<std::uint32_t>(std::stoul(item.substr(0, dots)));
    std::string rest = item.substr(dots + 2);
    std::uint32_t step = 1;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = static_cast<std::uint32_t>(std::stoul(rest.substr(colon + 1)));
      rest = rest.substr(0, colon);
    }
    const std::uint32_t hi = static_cast<std::uint32_t>(std::stoul(rest));
    if (step == 0 || hi < lo) throw Error("bad kappa range: " + item);
    for (std::uint32_t k = lo; k <= hi; k += step) grid.push_back(k);
  }
  if (grid.empty()) throw Error("empty kappa grid");
  return grid;
}

std::vector<PerturbationSpec> parse_delta_grid(const std::string& text, std::size_t m,
                                               std::uint32_t q) {
  // percentages plus the literal "inf", e.g. "10,20,30,40,50,inf"
  std::vector<double> fractions;
  bool include_inf = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf") {
      include_inf = true;
    } else {
      fractions.push_back(std::stod(item) / 100.0);
    }
  }
  if (fractions.empty() && !include_inf) throw Error("empty delta grid");
  return delta_grid(m, fractions, include_inf, q);
}

PerturbationSpec parse_delta_value(const std::string& text, std::size_t m, std::uint32_t q) {
  if (text == "inf") return PerturbationSpec::infinity(q, m);
  return PerturbationSpec::fraction(std::stod(text) / 100.0, m);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input: " + path);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.clear();
  in.seekg(0);
  if (std::equal(magic, magic + 4, kGraphMagic)) return read_graph_binary(in);
  return parse_edge_list(in).graph;
}

std::string default_network_id(const std::string& path) {
  return fs::path(path).stem().string();
}

std::string perturb_cache_name(std::uint64_t src_hash, const PerturbationSpec& spec,
                               std::uint64_t seed) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "graph_%016llx_d%s_Q%u_s%llu.nsg",
                static_cast<unsigned long long>(src_hash), spec.label().c_str(),
                spec.infinity_multiplier, static_cast<unsigned long long>(seed));
  return buf;
}

std::uint64_t config_hash(const RunConfig& rc, std::uint64_t graph_hash_value) {
  std::uint64_t h = graph_hash_value;
  const std::string text = rc.snapshot();
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

int cmd_perturb(const RunConfig& rc) {
  const Graph g = load_graph(rc.input);
  const std::uint64_t src_hash = graph_hash(g);
  fs::create_directories(rc.cache_dir);
  const auto grid = parse_delta_grid(rc.delta_grid, g.edge_count(), rc.infinity_multiplier);
  for (const PerturbationSpec& spec : grid) {
    const std::uint64_t seed =
        derive_seed(rc.seed, {seed_tag::perturb, spec.swap_count, spec.infinite ? 1u : 0u});
    const fs::path path = fs::path(rc.cache_dir) / perturb_cache_name(src_hash, spec, seed);
    if (fs::exists(path)) {
      std::cout << "delta=" << spec.label() << " cache hit: " << path.string() << "\n";
      continue;
    }
    const auto [gd, outcome] = perturb(g, spec, seed);
    std::ofstream out(path, std::ios::binary);
    write_graph_binary(out, gd);
    std::cout << "delta=" << spec.label() << " swaps=" << outcome.succeeded
              << " attempts=" << outcome.attempted
              << " rejected=" << outcome.rejected_shared_vertex << " -> " << path.string()
              << "\n";
  }
  return 0;
}

int cmd_eval(const RunConfig& rc, std::uint32_t kappa, const std::string& delta_text) {
  const Graph g = load_graph(rc.input);
  const PerturbationSpec spec =
      parse_delta_value(delta_text, g.edge_count(), rc.infinity_multiplier);
  const AccuracyEstimate est = estimate_delta(g, kappa, spec, rc.estimate_config(), rc.seed);
  std::cout << "network=" << rc.network_id << " kappa=" << est.kappa
            << " delta=" << est.delta.label() << " classifier=" << est.classifier
            << " accuracy_mean=" << est.accuracy_mean << " accuracy_std=" << est.accuracy_std
            << " repeats=" << est.repeats << " test_size=" << est.test_size << "\n";

  fs::create_directories(rc.out_dir);
  const fs::path csv_path = fs::path(rc.out_dir) / (rc.network_id + "_eval.csv");
  const bool fresh = !fs::exists(csv_path);
  std::ofstream csv(csv_path, std::ios::app);
  if (fresh) {
    std::istringstream lines(rc.snapshot());
    std::string line;
    while (std::getline(lines, line)) csv << "# " << line << "\n";
    csv << kScanCsvHeader << "\n";
  }
  write_scan_csv_row(csv, rc.network_id, est, rc.seed);
  return 0;
}

int cmd_scan(const RunConfig& rc) {
  const Graph g = load_graph(rc.input);
  const auto kappas = parse_kappa_grid(rc.kappa_grid);
  const auto deltas = parse_delta_grid(rc.delta_grid, g.edge_count(), rc.infinity_multiplier);
  fs::create_directories(rc.cache_dir);
  fs::create_directories(rc.out_dir);

  // Cell-level cache: one CSV per (network, config); resuming reads it back.
  const std::uint64_t cfg_hash = config_hash(rc, graph_hash(g));
  char cache_name[96];
  std::snprintf(cache_name, sizeof(cache_name), "scan_%s_%016llx.csv", rc.network_id.c_str(),
                static_cast<unsigned long long>(cfg_hash));
  const fs::path cache_path = fs::path(rc.cache_dir) / cache_name;

  std::map<std::pair<std::uint32_t, std::string>, AccuracyEstimate> cached;
  if (fs::exists(cache_path)) {
    std::ifstream in(cache_path);
    for (const ScanCsvRow& row : read_scan_csv(in)) {
      AccuracyEstimate est;
      est.kappa = row.kappa;
      est.accuracy_mean = row.accuracy_mean;
      est.accuracy_std = row.accuracy_std;
      est.repeats = row.repeats;
      est.classifier = row.classifier;
      cached[{row.kappa, row.delta_label}] = est;
    }
    std::cerr << "scan: " << cached.size() << " cached cells from " << cache_path.string()
              << "\n";
  }

  std::ofstream cache_out(cache_path, std::ios::app);
  ScanOptions opts;
  opts.jobs = rc.jobs;
  opts.lookup = [&cached](std::uint32_t kappa,
                          const PerturbationSpec& spec) -> std::optional<AccuracyEstimate> {
    const auto it = cached.find({kappa, spec.label()});
    if (it == cached.end()) return std::nullopt;
    AccuracyEstimate est = it->second;
    est.delta = spec;
    return est;
  };
  opts.on_cell = [&cache_out, &rc](const AccuracyEstimate& est) {
    write_scan_csv_row(cache_out, rc.network_id, est, rc.seed);
    cache_out.flush();
  };

  const ScanResult scan =
      run_scan(g, rc.network_id, kappas, deltas, rc.estimate_config(), rc.seed, opts);

  const fs::path csv_path = fs::path(rc.out_dir) / (rc.network_id + "_scan.csv");
  {
    std::ofstream out(csv_path);
    write_scan_csv(out, scan, rc.snapshot());
  }

  const AuxMeasures aux = aux_measures(g, rc.pair_fraction, rc.bfs_sources,
                                       derive_seed(rc.seed, {seed_tag::aux}));
  const ScaleReport report = make_report(scan, g, rc.taus, aux);
  const fs::path report_path = fs::path(rc.out_dir) / (rc.network_id + "_report.txt");
  {
    std::ofstream out(report_path);
    out << "# netscale report\n";
    std::istringstream lines(rc.snapshot());
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
    out << "\n";
    write_report(out, report);
  }
  std::cout << "scan: " << csv_path.string() << "\nreport: " << report_path.string() << "\n";

  const std::size_t total = scan.cells.size();
  std::size_t done = 0;
  for (const auto& cell : scan.cells)
    if (cell) ++done;
  if (!scan.failures.empty()) {
    std::cerr << "scan: " << scan.failures.size() << " failed cells\n";
    for (const auto& f : scan.failures) std::cerr << "  " << f << "\n";
  }
  return done * 10 >= total * 9 ? 0 : 1;
}

int cmd_report(const RunConfig& rc, const std::string& scan_csv,
               std::optional<double> cluster_size, const std::string& summary_csv) {
  const Graph g = load_graph(rc.input);
  std::ifstream in(scan_csv);
  if (!in) throw Error("cannot open scan csv: " + scan_csv);
  const auto rows = read_scan_csv(in);
  if (rows.empty()) throw Error("scan csv has no rows");

  std::vector<std::uint32_t> kappas;
  std::vector<std::string> labels;
  for (const ScanCsvRow& row : rows) {
    if (std::find(kappas.begin(), kappas.end(), row.kappa) == kappas.end())
      kappas.push_back(row.kappa);
    if (std::find(labels.begin(), labels.end(), row.delta_label) == labels.end())
      labels.push_back(row.delta_label);
  }
  std::sort(kappas.begin(), kappas.end());

  ScanResult scan;
  scan.network_id = rows.front().network;
  scan.kappa_grid = kappas;
  for (const std::string& label : labels)
    scan.delta_grid.push_back(parse_delta_value(
        label == "inf" ? label : std::to_string(std::stod(label) * 100.0), g.edge_count(),
        rc.infinity_multiplier));
  scan.cells.resize(kappas.size() * labels.size());
  scan.seed = rows.front().seed;
  auto [kind, features] = parse_classifier_tag(rows.front().classifier);
  scan.config.kind = kind;
  scan.config.features = features;
  for (const ScanCsvRow& row : rows) {
    const auto ki = std::find(kappas.begin(), kappas.end(), row.kappa) - kappas.begin();
    const auto di = std::find(labels.begin(), labels.end(), row.delta_label) - labels.begin();
    AccuracyEstimate est;
    est.kappa = row.kappa;
    est.delta = scan.delta_grid[di];
    est.accuracy_mean = row.accuracy_mean;
    est.accuracy_std = row.accuracy_std;
    est.repeats = row.repeats;
    est.classifier = row.classifier;
    scan.cell(ki, di) = est;
  }

  const AuxMeasures aux = aux_measures(g, rc.pair_fraction, rc.bfs_sources,
                                       derive_seed(rc.seed, {seed_tag::aux}));
  ScaleReport report = make_report(scan, g, rc.taus, aux, cluster_size);

  if (!summary_csv.empty()) {
    // cross-network summary: header "network,intrinsic_scale,<m1>,<m2>,..."
    std::ifstream sin(summary_csv);
    if (!sin) throw Error("cannot open summary csv: " + summary_csv);
    std::string header;
    std::getline(sin, header);
    std::vector<std::string> names;
    std::stringstream hs(header);
    std::string item;
    while (std::getline(hs, item, ',')) names.push_back(item);
    if (names.size() < 3 || names[1] != "intrinsic_scale")
      throw Error("summary csv: expected header network,intrinsic_scale,...");
    std::vector<std::vector<double>> columns(names.size() - 1);
    std::string line;
    while (std::getline(sin, line)) {
      if (line.empty()) continue;
      std::stringstream ls(line);
      std::getline(ls, item, ',');  // network name
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (!std::getline(ls, item, ',')) throw Error("summary csv: short row");
        columns[c].push_back(std::stod(item));
      }
    }
    for (std::size_t c = 1; c < columns.size(); ++c)
      report.correlations[names[c + 1]] = pearson(columns[0], columns[c]);
  }

  write_report(std::cout, report);
  return 0;
}

int cmd_tree_demo(const RunConfig& rc, std::uint32_t t_min, std::uint32_t t_max,
                  std::uint64_t trials, const std::string& out_file) {
  if (t_max < t_min) throw Error("tree-demo: t-max must be >= t-min");
  std::vector<TreeDemoResult> curve;
  for (std::uint32_t t = t_min; t <= t_max; ++t) {
    curve.push_back(tree_demo(t, trials, rc.infinity_multiplier,
                              derive_seed(rc.seed, {seed_tag::tree, t})));
    const TreeDemoResult& r = curve.back();
    std::cout << "t=" << r.tree_size << " accuracy=" << r.accuracy
              << " connected_fraction=" << r.connected_fraction_randomized
              << " stderr=" << r.standard_error() << "\n";
  }
  if (!out_file.empty()) {
    std::ofstream out(out_file);
    std::ostringstream cfg;
    cfg << "netscale tree-demo\nseed=" << rc.seed << "\ntrials=" << trials
        << "\nQ=" << rc.infinity_multiplier;
    write_tree_curve_csv(out, curve, cfg.str());
  }
  return 0;
}

int cmd_oracle(const RunConfig& rc, std::uint32_t kappa, const std::string& delta_text,
               std::uint64_t samples, const std::string& dist_out,
               const std::string& signature_out, const std::string& features_out,
               bool use_cache) {
  const Graph g0 = load_graph(rc.input);
  const PerturbationSpec spec =
      parse_delta_value(delta_text, g0.edge_count(), rc.infinity_multiplier);
  const std::uint64_t perturb_seed =
      derive_seed(rc.seed, {seed_tag::perturb, spec.swap_count, spec.infinite ? 1u : 0u});
  const auto [gd, outcome] = perturb(g0, spec, perturb_seed);

  auto obtain = [&](const Graph& g, const char* side) {
    const std::uint64_t draw_seed = derive_seed(rc.seed, {seed_tag::dataset, kappa});
    if (use_cache) {
      fs::create_directories(rc.cache_dir);
      const fs::path path = fs::path(rc.cache_dir) /
                            sample_cache_name(graph_hash(g), kappa, samples, draw_seed);
      if (fs::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        std::cerr << "oracle: " << side << " cache hit: " << path.string() << "\n";
        return read_sample_stream(in);
      }
      auto drawn = draw_samples(g, kappa, samples, draw_seed);
      std::ofstream out(path, std::ios::binary);
      write_sample_stream(out, drawn, kappa);
      return drawn;
    }
    return draw_samples(g, kappa, samples, draw_seed);
  };

  const auto s0 = obtain(g0, "p0");
  const auto sd = obtain(gd, "pdelta");
  const EmpiricalDistribution p0 = empirical_distribution_from_samples(s0);
  const EmpiricalDistribution pd = empirical_distribution_from_samples(sd);
  std::cout << "kappa=" << kappa << " delta=" << spec.label() << " samples=" << samples
            << " classes_p0=" << p0.mass.size() << " classes_pdelta=" << pd.mass.size()
            << " bayes_accuracy=" << bayes_accuracy(p0, pd) << "\n";

  auto dump = [&](const std::string& prefix, const char* suffix, auto writer) {
    if (prefix.empty()) return;
    fs::create_directories(fs::path(prefix).parent_path().empty()
                               ? fs::path(".")
                               : fs::path(prefix).parent_path());
    writer(prefix + "_p0" + suffix, s0, p0);
    writer(prefix + "_pdelta" + suffix, sd, pd);
  };
  dump(dist_out, ".csv", [](const std::string& path, const auto&, const auto& dist) {
    std::ofstream out(path);
    write_distribution_csv(out, dist);
  });
  dump(signature_out, ".pgm", [&](const std::string& path, const auto& samples_in, const auto&) {
    std::vector<SignatureImage> images;
    images.reserve(samples_in.size());
    for (const auto& s : samples_in) images.push_back(signature_image(s));
    std::ofstream out(path, std::ios::binary);
    write_pgm(out, mean_signature(images), "netscale mean signature kappa=" +
                                               std::to_string(kappa) + " delta=" + spec.label());
  });
  dump(features_out, "_features.csv", [](const std::string& path, const auto& samples_in,
                                         const auto&) {
    std::ofstream out(path);
    write_features_csv(out, samples_in);
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netscale: intrinsic scale of networks via subgraph distinguishability"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value config file; flags override");

  RunConfig rc;
  app.add_option("--seed", rc.seed, "base seed");
  app.add_option("--cache-dir", rc.cache_dir, "cache directory");
  app.add_option("--out-dir", rc.out_dir, "output directory");
  app.add_option("--classifier", rc.classifier,
                 "bayes_C|bayes_r|bayes_Cr|logistic|image_mlp|connectivity")
      ->check(CLI::IsMember(
          {"bayes_C", "bayes_r", "bayes_Cr", "logistic", "image_mlp", "connectivity"}));
  app.add_option("--samples", rc.samples, "samples per class");
  app.add_option("--repeats", rc.repeats, "experiment repeats");
  app.add_option("--train-fraction", rc.train_fraction, "train split fraction");
  app.add_option("--bins", rc.bins, "histogram bins");
  app.add_option("--infinity-multiplier", rc.infinity_multiplier,
                 "successful swaps per edge realizing delta=inf");
  app.add_option("--jobs", rc.jobs, "worker threads for scan cells");
  app.add_option("--tau", rc.taus, "accuracy thresholds for kappa*");
  app.add_option("--pair-fraction", rc.pair_fraction, "vertex-pair sample for path length");
  app.add_option("--bfs-sources", rc.bfs_sources, "double-sweep runs for diameter");

  std::string network_id;

  auto* perturb_cmd = app.add_subcommand("perturb", "cache perturbed copies per delta");
  perturb_cmd->add_option("input", rc.input, "edge list or binary graph")->required();
  perturb_cmd->add_option("--network-id", network_id, "name used in outputs");
  perturb_cmd->add_option("--delta-grid", rc.delta_grid, "percent list plus inf");

  std::uint32_t eval_kappa = 8;
  std::string eval_delta = "inf";
  auto* eval_cmd = app.add_subcommand("eval", "estimate one (kappa, delta) cell");
  eval_cmd->add_option("input", rc.input)->required();
  eval_cmd->add_option("--network-id", network_id);
  eval_cmd->add_option("--kappa", eval_kappa, "subgraph size")->required();
  eval_cmd->add_option("--delta", eval_delta, "percent or inf");

  auto* scan_cmd = app.add_subcommand("scan", "full (kappa, delta) grid + report");
  scan_cmd->add_option("input", rc.input)->required();
  scan_cmd->add_option("--network-id", network_id);
  scan_cmd->add_option("--kappa-grid", rc.kappa_grid, "e.g. 4..64 or 4..64:4 or 4,8,16");
  scan_cmd->add_option("--delta-grid", rc.delta_grid, "percent list plus inf");

  std::string report_scan_csv, report_summary_csv;
  double report_cluster_size = -1.0;
  auto* report_cmd = app.add_subcommand("report", "rebuild a report from a scan CSV");
  report_cmd->add_option("input", rc.input)->required();
  report_cmd->add_option("--scan-csv", report_scan_csv)->required();
  report_cmd->add_option("--cluster-size", report_cluster_size,
                         "externally computed mean cluster size");
  report_cmd->add_option("--summary-csv", report_summary_csv,
                         "cross-network table for correlations");

  std::uint32_t t_min = 5, t_max = 20;
  std::uint64_t tree_trials = 100000;
  std::string tree_out;
  auto* tree_cmd = app.add_subcommand("tree-demo", "tree connectivity experiment curve");
  tree_cmd->add_option("--t-min", t_min);
  tree_cmd->add_option("--t-max", t_max);
  tree_cmd->add_option("--trials", tree_trials);
  tree_cmd->add_option("--out", tree_out, "curve CSV path");

  std::uint32_t oracle_kappa = 4;
  std::string oracle_delta = "inf";
  std::uint64_t oracle_samples = 100000;
  std::string oracle_dist_out, oracle_signature_out, oracle_features_out;
  bool oracle_cache = false;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "empirical signature distributions and Bayes accuracy");
  oracle_cmd->add_option("input", rc.input)->required();
  oracle_cmd->add_option("--kappa", oracle_kappa)->required();
  oracle_cmd->add_option("--delta", oracle_delta, "percent or inf");
  oracle_cmd->add_option("--oracle-samples", oracle_samples, "samples per distribution");
  oracle_cmd->add_option("--dist-out", oracle_dist_out, "prefix for distribution CSVs");
  oracle_cmd->add_option("--signature-out", oracle_signature_out,
                         "prefix for mean-signature PGMs");
  oracle_cmd->add_option("--features-out", oracle_features_out, "prefix for feature CSVs");
  oracle_cmd->add_flag("--use-cache", oracle_cache, "cache sampled subgraph streams");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    rc.network_id = network_id.empty() ? default_network_id(rc.input) : network_id;
    if (perturb_cmd->parsed()) return cmd_perturb(rc);
    if (eval_cmd->parsed()) return cmd_eval(rc, eval_kappa, eval_delta);
    if (scan_cmd->parsed()) return cmd_scan(rc);
    if (report_cmd->parsed())
      return cmd_report(rc, report_scan_csv,
                        report_cluster_size >= 0.0 ? std::optional<double>(report_cluster_size)
                                                   : std::nullopt,
                        report_summary_csv);
    if (tree_cmd->parsed()) return cmd_tree_demo(rc, t_min, t_max, tree_trials, tree_out);
    if (oracle_cmd->parsed())
      return cmd_oracle(rc, oracle_kappa, oracle_delta, oracle_samples, oracle_dist_out,
                        oracle_signature_out, oracle_features_out, oracle_cache);
  } catch (const std::exception& e) {
    std::cerr << "netscale: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
