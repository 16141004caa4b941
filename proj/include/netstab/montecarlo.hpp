#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "netstab/measures.hpp"
#include "netstab/types.hpp"

namespace netstab {

enum class Characteristic { Histogram, DegreeDistribution, MaxClique, MaxIndependentSet, MstTopology };
enum class CenterMode { TrueMu, SampleMean };

std::string_view to_string(Characteristic c);
Characteristic parse_characteristic(std::string_view text);
std::string_view to_string(CenterMode m);
CenterMode parse_center_mode(std::string_view text);

struct ExperimentConfig {
  /// Path to an N x N CSV, or "fixture:<id>".
  std::string lambda_source = "fixture:uk2010";
  Characteristic characteristic = Characteristic::DegreeDistribution;
  std::int64_t n = 100;
  std::int64_t replications = 1000;
  std::vector<double> gamma_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  /// Pearson-scale thresholds; sign networks use the arcsine-mapped value
  /// unless `raw_thresholds` is set.
  std::vector<double> thresholds = {0.3};
  bool raw_thresholds = false;
  int nu = 3;
  std::uint64_t seed = 20150101;
  CenterMode center_mode = CenterMode::TrueMu;
  /// Use the leading principal submatrix of this size. MST runs default to 10.
  std::optional<int> dimension;
  double bin_width = 0.1;
};

/// One message per offending field; empty when valid.
std::vector<std::string> validate(const ExperimentConfig& config);

/// Unknown keys and type errors are reported as ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Resolves lambda_source and applies `dimension` (or the MST default).
Matrix load_lambda(const ExperimentConfig& config);

struct CurvePoint {
  double gamma;
  double mean_divergence;
  double std_error;
  std::int64_t replications;
};

struct StabilityCurve {
  MeasureKind measure_kind;
  Characteristic characteristic;
  /// Threshold on the curve's own scale; absent for histogram and MST runs.
  std::optional<double> threshold;
  std::vector<CurvePoint> points;
};

struct CurvePair {
  StabilityCurve pearson;
  StabilityCurve sign;
};

struct ExperimentResult {
  /// One pair per configured threshold (a single pair when thresholds do not apply).
  std::vector<CurvePair> curves;
  std::vector<std::string> warnings;
};

/// Stream seed for replication `replication` at grid index `gamma_index`.
std::uint64_t replication_seed(std::uint64_t master, std::size_t gamma_index, std::size_t replication);

/// Parallel over (gamma, replication) units with `workers` OpenMP threads
/// (0 = runtime default). The result does not depend on `workers`.
ExperimentResult run_experiment(const ExperimentConfig& config, const Matrix& lambda, int workers = 0);
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 0);

namespace reference {
/// Plain serial loop over the same per-replication kernel.
ExperimentResult run_experiment(const ExperimentConfig& config, const Matrix& lambda);
}  // namespace reference

struct Flatness {
  double absolute;
  /// absolute / grand mean, when the grand mean is positive.
  std::optional<double> normalized;
};

/// max - min of the mean divergences across the grid.
Flatness summarize_flatness(const StabilityCurve& curve);

/// gamma,measure_kind,characteristic,mean_divergence,std_error,replications
void write_curves_csv(std::ostream& out, const CurvePair& pair);

}  // namespace netstab
