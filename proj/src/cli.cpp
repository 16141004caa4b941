#include "netstab/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "netstab/error.hpp"
#include "netstab/fixtures.hpp"
#include "netstab/ingestion.hpp"
#include "netstab/matrix_io.hpp"
#include "netstab/montecarlo.hpp"
#include "netstab/structures.hpp"

namespace netstab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  int workers = 0;
  std::string fixture;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::pair<double, double> off_diagonal_range(const Matrix& m) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (i == j) continue;
      lo = std::min(lo, m(i, j));
      hi = std::max(hi, m(i, j));
    }
  }
  return {lo, hi};
}

int cmd_truth(const GlobalOptions& global, const std::vector<std::string>& positionals, std::ostream& out) {
  DependenceMatrix truth = [&] {
    if (!global.fixture.empty()) {
      if (positionals.size() != 1) throw UsageError("truth --fixture <id> takes only <out_matrix_csv>");
      return pearson_true(load_fixture(global.fixture));
    }
    if (positionals.size() != 2) throw UsageError("truth needs <prices_csv> <out_matrix_csv>");
    const PriceTable prices = load_prices(positionals[0]);
    const DependenceMatrix sample = build_truth(to_returns(prices), prices.tickers);
    const PdRepair repaired = repair_positive_definite(sample.values());
    if (repaired.epsilon > 0.0) out << "pd_repair_epsilon=" << format_double(repaired.epsilon) << '\n';
    return DependenceMatrix(MeasureKind::Pearson, repaired.matrix, sample.n_source());
  }();
  const fs::path target = positionals.back();
  auto file = open_output(target);
  write_dependence_csv(file, truth);
  const auto [lo, hi] = off_diagonal_range(truth.values());
  out << "N=" << truth.size() << '\n';
  if (truth.size() > 1) out << "min_offdiag=" << format_double(lo) << "\nmax_offdiag=" << format_double(hi) << '\n';
  out << "wrote " << target.string() << '\n';
  return kSuccess;
}

json edges_json(const MarketGraph& g) {
  json edges = json::array();
  for (auto [i, j] : g.edges()) edges.push_back({i, j});
  return edges;
}

DependenceMatrix load_network(const GlobalOptions& global, const std::string& path) {
  if (!global.fixture.empty()) {
    if (!path.empty()) throw UsageError("give either --fixture or a matrix file, not both");
    return pearson_true(load_fixture(global.fixture));
  }
  if (path.empty()) throw UsageError("structures needs a matrix file or --fixture");
  std::string comment;
  Matrix m = read_matrix_csv(fs::path(path), &comment);
  if (comment.find("kind=sign") != std::string::npos) return DependenceMatrix(MeasureKind::SignProbability, std::move(m));
  return pearson_true(m);
}

struct StructuresOptions {
  std::string matrix;
  std::string kind;
  std::optional<double> gamma0;
  std::string measure = "pearson";
  bool raw_threshold = false;
  double bin_width = 0.1;
  std::string out;
};

json structures_json(const DependenceMatrix& w, const StructuresOptions& opt) {
  json j;
  j["kind"] = opt.kind;
  j["measure"] = std::string(to_string(w.kind()));
  j["vertices"] = w.size();
  const bool needs_threshold = opt.kind == "degrees" || opt.kind == "clique" || opt.kind == "mis";
  if (needs_threshold && !opt.gamma0) throw UsageError("--gamma0 is required for kind " + opt.kind);
  if (needs_threshold) {
    const double threshold = threshold_for(w.kind(), *opt.gamma0, opt.raw_threshold);
    const MarketGraph g = market_graph(w, threshold);
    j["threshold"] = threshold;
    j["edges"] = edges_json(g);
    if (opt.kind == "degrees") {
      j["counts"] = degree_distribution(g).counts;
    } else if (opt.kind == "clique") {
      j["members"] = max_clique(g).members;
    } else {
      j["members"] = max_independent_set(g).members;
    }
  } else if (opt.kind == "hist") {
    const auto h = edge_histogram(w, default_bins(w.kind(), opt.bin_width));
    j["bin_edges"] = h.bin_edges;
    j["counts"] = h.counts;
  } else if (opt.kind == "mst" || opt.kind == "mst-topology") {
    const SpanningTree tree = maximum_spanning_tree(w);
    json edges = json::array();
    for (const auto& e : tree.edges) edges.push_back({e.u, e.v, e.weight});
    j["edges"] = edges;
    j["total_weight"] = tree.total_weight;
    if (opt.kind == "mst-topology") j["degrees"] = tree_topology(tree).degrees;
  } else {
    throw UsageError("unknown kind '" + opt.kind + "' (hist, degrees, clique, mis, mst, mst-topology)");
  }
  return j;
}

int cmd_structures(const GlobalOptions& global, const StructuresOptions& opt, std::ostream& out) {
  DependenceMatrix w = load_network(global, opt.matrix);
  const MeasureKind wanted = [&] {
    try {
      return parse_measure_kind(opt.measure);
    } catch (const KindError& e) {
      throw UsageError(e.what());
    }
  }();
  if (wanted == MeasureKind::SignProbability && w.kind() == MeasureKind::Pearson) w = sign_true(w);
  if (wanted == MeasureKind::Pearson && w.kind() == MeasureKind::SignProbability) {
    throw UsageError("input is a sign-probability matrix; use --measure sign");
  }
  const json j = structures_json(w, opt);
  if (opt.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    auto file = open_output(opt.out);
    file << j.dump(2) << '\n';
    out << "wrote " << opt.out << '\n';
  }
  return kSuccess;
}

struct ExperimentOverrides {
  std::string config;
  std::string out;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> replications;
  std::vector<double> gamma_grid;
  std::vector<double> thresholds;
  std::optional<std::string> characteristic;
  std::optional<int> nu;
  std::optional<std::string> center;
  std::optional<int> dimension;
};

fs::path curve_path(const fs::path& base, const CurvePair& pair, std::size_t count) {
  if (count == 1 || !pair.pearson.threshold) return base;
  fs::path p = base;
  p.replace_filename(base.stem().string() + "_t" + format_double(*pair.pearson.threshold) + base.extension().string());
  return p;
}

int cmd_experiment(const GlobalOptions& global, const ExperimentOverrides& opt, std::ostream& out) {
  std::ifstream in(opt.config);
  if (!in) throw MissingInputError("no such input: " + opt.config);
  json raw;
  try {
    raw = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig config = config_from_json(raw);
  if (global.seed) config.seed = *global.seed;
  if (!global.fixture.empty()) config.lambda_source = "fixture:" + global.fixture;
  if (opt.n) config.n = *opt.n;
  if (opt.replications) config.replications = *opt.replications;
  if (!opt.gamma_grid.empty()) config.gamma_grid = opt.gamma_grid;
  if (!opt.thresholds.empty()) config.thresholds = opt.thresholds;
  try {
    if (opt.characteristic) config.characteristic = parse_characteristic(*opt.characteristic);
    if (opt.center) config.center_mode = parse_center_mode(*opt.center);
  } catch (const KindError& e) {
    throw UsageError(e.what());
  }
  if (opt.nu) config.nu = *opt.nu;
  if (opt.dimension) config.dimension = *opt.dimension;
  if (auto problems = validate(config); !problems.empty()) throw ConfigError(std::move(problems));

  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult result = run_experiment(config, global.workers);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  for (const auto& w : result.warnings) out << "warning: " << w << '\n';
  const fs::path base = opt.out;
  json outputs = json::array();
  for (const auto& pair : result.curves) {
    const fs::path path = curve_path(base, pair, result.curves.size());
    auto file = open_output(path);
    write_curves_csv(file, pair);
    outputs.push_back(path.filename().string());
    for (const StabilityCurve* curve : {&pair.pearson, &pair.sign}) {
      out << path.filename().string() << ' ' << to_string(curve->measure_kind);
      if (curve->points.size() >= 2) {
        const Flatness f = summarize_flatness(*curve);
        out << " flatness=" << format_double(f.absolute);
        if (f.normalized) out << " normalized=" << format_double(*f.normalized);
      }
      out << '\n';
    }
  }
  fs::path sidecar = base;
  sidecar.replace_extension(".json");
  json meta{{"config", config_to_json(config)}, {"outputs", outputs}, {"warnings", result.warnings}};
  auto side = open_output(sidecar);
  side << meta.dump(2) << '\n';
  out << "wall_time_s=" << elapsed.count() << '\n';
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability of market network identification under elliptical return models", "netstab"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--seed", global.seed, "Override the experiment seed");
  app.add_option("--workers", global.workers, "Worker threads (0 = all available)")->check(CLI::NonNegativeNumber);
  app.add_option("--fixture", global.fixture, "Use a shipped matrix (uk2010) instead of an input file");

  std::vector<std::string> truth_args;
  auto* truth = app.add_subcommand("truth", "Build a truth correlation matrix from daily prices");
  truth->add_option("files", truth_args, "<prices_csv> <out_matrix_csv>, or <out_matrix_csv> with --fixture")
      ->expected(1, 2)
      ->required();

  StructuresOptions sopt;
  auto* structures = app.add_subcommand("structures", "Extract a true network characteristic as JSON");
  structures->add_option("matrix", sopt.matrix, "Matrix CSV (omit with --fixture)");
  structures->add_option("--kind", sopt.kind, "hist, degrees, clique, mis, mst, mst-topology")->required();
  structures->add_option("--gamma0", sopt.gamma0, "Pearson-scale threshold (degrees, clique, mis)");
  structures->add_option("--measure", sopt.measure, "pearson or sign");
  structures->add_flag("--raw-threshold", sopt.raw_threshold, "Apply --gamma0 to sign networks unmapped");
  structures->add_option("--bin-width", sopt.bin_width, "Histogram bin width");
  structures->add_option("-o,--out", sopt.out, "Output JSON (stdout when omitted)");

  ExperimentOverrides eopt;
  auto* experiment = app.add_subcommand("experiment", "Run a stability experiment and write curve CSVs");
  experiment->add_option("config", eopt.config, "Experiment config JSON")->required();
  experiment->add_option("out", eopt.out, "Curve CSV path")->required();
  experiment->add_option("--n", eopt.n, "Observations per replication");
  experiment->add_option("--replications", eopt.replications, "Replications per gamma");
  experiment->add_option("--gamma", eopt.gamma_grid, "Gamma grid")->delimiter(',');
  experiment->add_option("--thresholds", eopt.thresholds, "Pearson-scale thresholds")->delimiter(',');
  experiment->add_option("--characteristic", eopt.characteristic, "histogram, degrees, clique, mis, mst-topology");
  experiment->add_option("--nu", eopt.nu, "Student degrees of freedom");
  experiment->add_option("--center", eopt.center, "true-mu or sample-mean");
  experiment->add_option("--dimension", eopt.dimension, "Leading principal submatrix size");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("netstab");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (truth->parsed()) return cmd_truth(global, truth_args, out);
    if (structures->parsed()) return cmd_structures(global, sopt, out);
    return cmd_experiment(global, eopt, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const MissingInputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kUsageError;
  } catch (const KindError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

}  // namespace netstab
