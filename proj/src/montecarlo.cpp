#include "netstab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "netstab/divergence.hpp"
#include "netstab/error.hpp"
#include "netstab/fixtures.hpp"
#include "netstab/matrix_io.hpp"
#include "netstab/sampler.hpp"
#include "netstab/structures.hpp"

namespace netstab {

std::string_view to_string(Characteristic c) {
  switch (c) {
    case Characteristic::Histogram:
      return "histogram";
    case Characteristic::DegreeDistribution:
      return "degrees";
    case Characteristic::MaxClique:
      return "clique";
    case Characteristic::MaxIndependentSet:
      return "mis";
    case Characteristic::MstTopology:
      return "mst-topology";
  }
  return "unknown";
}

Characteristic parse_characteristic(std::string_view text) {
  if (text == "histogram" || text == "hist") return Characteristic::Histogram;
  if (text == "degrees" || text == "degree-distribution") return Characteristic::DegreeDistribution;
  if (text == "clique" || text == "max-clique") return Characteristic::MaxClique;
  if (text == "mis" || text == "max-independent-set") return Characteristic::MaxIndependentSet;
  if (text == "mst-topology" || text == "mst") return Characteristic::MstTopology;
  throw KindError("unknown characteristic '" + std::string(text) + "'");
}

std::string_view to_string(CenterMode m) { return m == CenterMode::TrueMu ? "true-mu" : "sample-mean"; }

CenterMode parse_center_mode(std::string_view text) {
  if (text == "true-mu") return CenterMode::TrueMu;
  if (text == "sample-mean") return CenterMode::SampleMean;
  throw KindError("unknown center mode '" + std::string(text) + "'");
}

namespace {

bool uses_threshold(Characteristic c) {
  return c == Characteristic::DegreeDistribution || c == Characteristic::MaxClique ||
         c == Characteristic::MaxIndependentSet;
}

}  // namespace

std::vector<std::string> validate(const ExperimentConfig& config) {
  std::vector<std::string> problems;
  if (config.lambda_source.empty()) problems.emplace_back("lambda_source: must name a file or fixture:<id>");
  if (config.n < 2) problems.push_back("n: must be >= 2, got " + std::to_string(config.n));
  if (config.replications < 1) problems.push_back("replications: must be >= 1, got " + std::to_string(config.replications));
  if (config.gamma_grid.empty()) problems.emplace_back("gamma_grid: must not be empty");
  for (double g : config.gamma_grid) {
    if (!(g >= 0.0 && g <= 1.0)) problems.push_back("gamma_grid: value " + format_double(g) + " outside [0, 1]");
  }
  if (config.nu < 3) problems.push_back("nu: must be >= 3, got " + std::to_string(config.nu));
  if (uses_threshold(config.characteristic) && config.thresholds.empty()) {
    problems.push_back("thresholds: required for characteristic " + std::string(to_string(config.characteristic)));
  }
  for (double t : config.thresholds) {
    if (!(t >= -1.0 && t <= 1.0)) problems.push_back("thresholds: value " + format_double(t) + " outside [-1, 1]");
  }
  if (config.dimension && *config.dimension < 2) {
    problems.push_back("dimension: must be >= 2, got " + std::to_string(*config.dimension));
  }
  if (!(config.bin_width > 0.0 && config.bin_width <= 1.0)) {
    problems.push_back("bin_width: must lie in (0, 1], got " + format_double(config.bin_width));
  }
  return problems;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError({"config: top level must be a JSON object"});
  ExperimentConfig c;
  std::vector<std::string> problems;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "lambda_source") {
        c.lambda_source = value.get<std::string>();
      } else if (key == "characteristic") {
        c.characteristic = parse_characteristic(value.get<std::string>());
      } else if (key == "n") {
        c.n = value.get<std::int64_t>();
      } else if (key == "replications") {
        c.replications = value.get<std::int64_t>();
      } else if (key == "gamma_grid") {
        c.gamma_grid = value.get<std::vector<double>>();
      } else if (key == "thresholds") {
        c.thresholds = value.get<std::vector<double>>();
      } else if (key == "raw_thresholds") {
        c.raw_thresholds = value.get<bool>();
      } else if (key == "nu") {
        c.nu = value.get<int>();
      } else if (key == "seed") {
        if (!value.is_number_unsigned()) throw KindError("expected a non-negative integer");
        c.seed = value.get<std::uint64_t>();
      } else if (key == "center_mode") {
        c.center_mode = parse_center_mode(value.get<std::string>());
      } else if (key == "dimension") {
        if (value.is_null()) {
          c.dimension.reset();
        } else {
          c.dimension = value.get<int>();
        }
      } else if (key == "bin_width") {
        c.bin_width = value.get<double>();
      } else {
        problems.push_back(key + ": unknown field");
      }
    } catch (const std::exception& e) {
      problems.push_back(key + ": " + e.what());
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["lambda_source"] = c.lambda_source;
  j["characteristic"] = std::string(to_string(c.characteristic));
  j["n"] = c.n;
  j["replications"] = c.replications;
  j["gamma_grid"] = c.gamma_grid;
  j["thresholds"] = c.thresholds;
  j["raw_thresholds"] = c.raw_thresholds;
  j["nu"] = c.nu;
  j["seed"] = c.seed;
  j["center_mode"] = std::string(to_string(c.center_mode));
  j["dimension"] = c.dimension ? nlohmann::json(*c.dimension) : nlohmann::json(nullptr);
  j["bin_width"] = c.bin_width;
  return j;
}

Matrix load_lambda(const ExperimentConfig& config) {
  constexpr std::string_view prefix = "fixture:";
  Matrix lambda;
  if (config.lambda_source.starts_with(prefix)) {
    lambda = load_fixture(std::string_view(config.lambda_source).substr(prefix.size()));
  } else {
    lambda = read_matrix_csv(std::filesystem::path(config.lambda_source));
  }
  std::optional<int> dim = config.dimension;
  if (!dim && config.characteristic == Characteristic::MstTopology) {
    dim = static_cast<int>(std::min<Index>(10, lambda.rows()));
  }
  if (dim) {
    if (*dim > lambda.rows()) {
      throw ConfigError({"dimension: " + std::to_string(*dim) + " exceeds matrix size " + std::to_string(lambda.rows())});
    }
    lambda = lambda.topLeftCorner(*dim, *dim).eval();
  }
  return lambda;
}

std::uint64_t replication_seed(std::uint64_t master, std::size_t gamma_index, std::size_t replication) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(mix(mix(master) ^ static_cast<std::uint64_t>(gamma_index)) ^ static_cast<std::uint64_t>(replication));
}

namespace {

// True characteristic for one (measure, threshold) slot.
struct TruthSlot {
  double threshold = 0.0;
  std::vector<double> bins;
  EdgeWeightHistogram histogram;
  DegreeDistribution degrees;
  VertexSet vertices{{}, VertexSetKind::Clique};
  TreeTopology topology;
};

class ReplicationKernel {
 public:
  ReplicationKernel(const ExperimentConfig& config, const Matrix& lambda) : config_(config) {
    const MixtureModel base = MixtureModel::centered(lambda, config.nu, 1.0);
    for (double g : config.gamma_grid) models_.push_back(base.with_gamma(g));

    const DependenceMatrix rho = pearson_true(lambda);
    const DependenceMatrix p = sign_true(rho);
    const std::size_t thresholds = uses_threshold(config.characteristic) ? config.thresholds.size() : 1;
    for (std::size_t k = 0; k < thresholds; ++k) {
      pearson_truth_.push_back(make_truth(rho, k));
      sign_truth_.push_back(make_truth(p, k));
    }
  }

  std::size_t slots() const { return pearson_truth_.size(); }

  /// Writes slots() Pearson divergences followed by slots() sign divergences.
  void evaluate(std::size_t gamma_index, std::size_t replication, std::span<double> out) const {
    const auto& model = models_[gamma_index];
    RandomStream rng(replication_seed(config_.seed, gamma_index, replication));
    const SampleMatrix sample = draw_mixture(model, config_.n, rng);
    const Vector center = config_.center_mode == CenterMode::TrueMu ? model.mu() : sample_mean(sample);
    const DependenceMatrix rho_hat = pearson_sample(sample);
    const DependenceMatrix p_hat = sign_sample(sample, center);
    for (std::size_t k = 0; k < slots(); ++k) {
      out[k] = divergence(rho_hat, pearson_truth_[k]);
      out[slots() + k] = divergence(p_hat, sign_truth_[k]);
    }
  }

  std::optional<double> threshold(MeasureKind kind, std::size_t slot) const {
    if (!uses_threshold(config_.characteristic)) return std::nullopt;
    return (kind == MeasureKind::Pearson ? pearson_truth_ : sign_truth_)[slot].threshold;
  }

 private:
  TruthSlot make_truth(const DependenceMatrix& w, std::size_t slot) const {
    TruthSlot t;
    switch (config_.characteristic) {
      case Characteristic::Histogram:
        t.bins = default_bins(w.kind(), config_.bin_width);
        t.histogram = edge_histogram(w, t.bins);
        break;
      case Characteristic::DegreeDistribution:
        t.threshold = threshold_for(w.kind(), config_.thresholds[slot], config_.raw_thresholds);
        t.degrees = degree_distribution(market_graph(w, t.threshold));
        break;
      case Characteristic::MaxClique:
        t.threshold = threshold_for(w.kind(), config_.thresholds[slot], config_.raw_thresholds);
        t.vertices = max_clique(market_graph(w, t.threshold));
        break;
      case Characteristic::MaxIndependentSet:
        t.threshold = threshold_for(w.kind(), config_.thresholds[slot], config_.raw_thresholds);
        t.vertices = max_independent_set(market_graph(w, t.threshold));
        break;
      case Characteristic::MstTopology:
        t.topology = tree_topology(maximum_spanning_tree(w));
        break;
    }
    return t;
  }

  double divergence(const DependenceMatrix& estimate, const TruthSlot& truth) const {
    switch (config_.characteristic) {
      case Characteristic::Histogram:
        return histogram_divergence(truth.histogram, edge_histogram(estimate, truth.bins));
      case Characteristic::DegreeDistribution:
        return static_cast<double>(
            degree_divergence(truth.degrees, degree_distribution(market_graph(estimate, truth.threshold))));
      case Characteristic::MaxClique:
        return static_cast<double>(
            vertex_set_divergence(truth.vertices, max_clique(market_graph(estimate, truth.threshold))));
      case Characteristic::MaxIndependentSet:
        return static_cast<double>(
            vertex_set_divergence(truth.vertices, max_independent_set(market_graph(estimate, truth.threshold))));
      case Characteristic::MstTopology:
        return topology_match(truth.topology, tree_topology(maximum_spanning_tree(estimate)));
    }
    return 0.0;
  }

  const ExperimentConfig& config_;
  std::vector<MixtureModel> models_;
  std::vector<TruthSlot> pearson_truth_;
  std::vector<TruthSlot> sign_truth_;
};

void check_config(const ExperimentConfig& config) {
  auto problems = validate(config);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::vector<std::string> config_warnings(const ExperimentConfig& config) {
  std::vector<std::string> warnings;
  if (!uses_threshold(config.characteristic) && !config.thresholds.empty()) {
    warnings.push_back("thresholds are ignored for characteristic " + std::string(to_string(config.characteristic)));
  }
  return warnings;
}

// Per-unit values laid out as [gamma][replication][slot * 2]. Sums run in
// fixed gamma-then-replication order.
ExperimentResult aggregate(const ExperimentConfig& config, const ReplicationKernel& kernel,
                           const std::vector<double>& values) {
  const std::size_t grid = config.gamma_grid.size();
  const auto reps = static_cast<std::size_t>(config.replications);
  const std::size_t width = 2 * kernel.slots();
  ExperimentResult result;
  result.warnings = config_warnings(config);
  for (std::size_t k = 0; k < kernel.slots(); ++k) {
    CurvePair pair{{MeasureKind::Pearson, config.characteristic, kernel.threshold(MeasureKind::Pearson, k), {}},
                   {MeasureKind::SignProbability, config.characteristic,
                    kernel.threshold(MeasureKind::SignProbability, k), {}}};
    for (std::size_t g = 0; g < grid; ++g) {
      for (int m = 0; m < 2; ++m) {
        const std::size_t column = static_cast<std::size_t>(m) * kernel.slots() + k;
        double sum = 0.0;
        for (std::size_t r = 0; r < reps; ++r) sum += values[(g * reps + r) * width + column];
        const double mean = sum / static_cast<double>(reps);
        double ss = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
          const double d = values[(g * reps + r) * width + column] - mean;
          ss += d * d;
        }
        const double se = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) / std::sqrt(static_cast<double>(reps)) : 0.0;
        auto& curve = m == 0 ? pair.pearson : pair.sign;
        curve.points.push_back({config.gamma_grid[g], mean, se, config.replications});
      }
    }
    result.curves.push_back(std::move(pair));
  }
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const Matrix& lambda, int workers) {
  check_config(config);
  const ReplicationKernel kernel(config, lambda);
  const std::size_t grid = config.gamma_grid.size();
  const auto reps = static_cast<std::size_t>(config.replications);
  const std::size_t width = 2 * kernel.slots();
  const auto units = static_cast<std::int64_t>(grid * reps);
  std::vector<double> values(grid * reps * width);

#ifdef _OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
#endif
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::int64_t unit = 0; unit < units; ++unit) {
    try {
      const auto u = static_cast<std::size_t>(unit);
      kernel.evaluate(u / reps, u % reps, std::span<double>(values.data() + u * width, width));
    } catch (...) {
#pragma omp critical(netstab_experiment_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(config, kernel, values);
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
  check_config(config);
  return run_experiment(config, load_lambda(config), workers);
}

namespace reference {

ExperimentResult run_experiment(const ExperimentConfig& config, const Matrix& lambda) {
  check_config(config);
  const ReplicationKernel kernel(config, lambda);
  const auto reps = static_cast<std::size_t>(config.replications);
  const std::size_t width = 2 * kernel.slots();
  std::vector<double> values(config.gamma_grid.size() * reps * width);
  for (std::size_t g = 0; g < config.gamma_grid.size(); ++g) {
    for (std::size_t r = 0; r < reps; ++r) {
      kernel.evaluate(g, r, std::span<double>(values.data() + (g * reps + r) * width, width));
    }
  }
  return aggregate(config, kernel, values);
}

}  // namespace reference

Flatness summarize_flatness(const StabilityCurve& curve) {
  if (curve.points.size() < 2) throw InsufficientDataError("flatness needs at least 2 curve points");
  const auto [lo, hi] = std::minmax_element(curve.points.begin(), curve.points.end(),
                                            [](const CurvePoint& a, const CurvePoint& b) {
                                              return a.mean_divergence < b.mean_divergence;
                                            });
  Flatness f{hi->mean_divergence - lo->mean_divergence, std::nullopt};
  double grand = 0.0;
  for (const auto& p : curve.points) grand += p.mean_divergence;
  grand /= static_cast<double>(curve.points.size());
  if (grand > 0.0) f.normalized = f.absolute / grand;
  return f;
}

void write_curves_csv(std::ostream& out, const CurvePair& pair) {
  out << "gamma,measure_kind,characteristic,mean_divergence,std_error,replications\n";
  for (const StabilityCurve* curve : {&pair.pearson, &pair.sign}) {
    for (const auto& p : curve->points) {
      out << format_double(p.gamma) << ',' << to_string(curve->measure_kind) << ',' << to_string(curve->characteristic)
          << ',' << format_double(p.mean_divergence) << ',' << format_double(p.std_error) << ',' << p.replications
          << '\n';
    }
  }
}

}  // namespace netstab
