// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netstab/cli.hpp"
#include "netstab/divergence.hpp"
#include "netstab/fixtures.hpp"
#include "netstab/measures.hpp"
#include "netstab/montecarlo.hpp"
#include "netstab/sampler.hpp"
#include "netstab/structures.hpp"
#include "oracles.hpp"

namespace {

using namespace netstab;
namespace fs = std::filesystem;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double combined_se(const CurvePoint& a, const CurvePoint& b) {
  return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

const CurvePoint& at_gamma(const StabilityCurve& c, double gamma) {
  for (const auto& p : c.points) {
    if (p.gamma == gamma) return p;
  }
  throw std::runtime_error("gamma not on grid");
}

fs::path output_dir() {
  const fs::path dir = fs::current_path() / "acceptance_output";
  fs::create_directories(dir);
  return dir;
}

// 1
Outcome arcsine_identity() {
  const std::vector<std::pair<double, double>> cases{{-1.0, 0.0}, {0.0, 0.5}, {0.5, 2.0 / 3.0}, {1.0, 1.0}};
  double worst = 0.0;
  for (auto [rho, expected] : cases) {
    Matrix m(2, 2);
    m << 1, rho, rho, 1;
    const double p = sign_true(DependenceMatrix(MeasureKind::Pearson, m))(0, 1);
    worst = std::max(worst, std::abs(p - expected));
  }
  return {worst <= 1e-12, "max error " + fmt(worst) + " (tol 1e-12)"};
}

// 2
Outcome clique_oracle() {
  std::mt19937_64 rng(2024);
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto adj = oracle::random_graph(12, 0.5, rng);
    const MarketGraph g(12, oracle::edge_list(adj));
    if (max_clique(g).members.size() != oracle::best_subset(adj, true).size()) ++mismatches;
    if (max_independent_set(g).members.size() != oracle::best_subset(adj, false).size()) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " size mismatches over 100 graphs (N=12, p=0.5)"};
}

// 3
Outcome mst_oracle() {
  std::string counts;
  bool ok = true;
  for (int n = 3; n <= 6; ++n) {
    const long trees = oracle::enumerate_spanning_trees(n, [](const auto&) {});
    ok = ok && BigInt(trees) == spanning_tree_count(static_cast<unsigned>(n)) &&
         trees == static_cast<long>(std::pow(n, n - 2));
    counts += " N=" + std::to_string(n) + ":" + std::to_string(trees);
  }
  std::mt19937_64 rng(3033);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Matrix w = Matrix::Identity(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) w(i, j) = w(j, i) = u(rng);
    double best = -1e300;
    oracle::enumerate_spanning_trees(6, [&](const auto& edges) {
      double total = 0.0;
      for (auto [a, b] : edges) total += w(a, b);
      best = std::max(best, total);
    });
    worst = std::max(worst, std::abs(maximum_spanning_tree(w).total_weight - best));
  }
  ok = ok && worst <= 1e-12;
  return {ok, "enumerated trees" + counts + "; max weight gap " + fmt(worst) + " over 50 matrices"};
}

// 4
Outcome estimator_consistency() {
  const Matrix lambda = load_fixture("uk2010");
  const DependenceMatrix rho = pearson_true(lambda);
  const DependenceMatrix p = sign_true(rho);
  double worst_rho = 0.0, worst_p = 0.0;
  std::string per_gamma;
  for (double gamma : {0.0, 0.5, 1.0}) {
    const auto model = MixtureModel::centered(lambda, 3, gamma);
    double gamma_rho = 0.0;
    for (std::uint64_t seed : {101ULL, 202ULL, 303ULL}) {
      RandomStream rng(seed);
      const auto sample = draw_mixture(model, 100000, rng);
      gamma_rho = std::max(gamma_rho, (pearson_sample(sample).values() - rho.values()).cwiseAbs().maxCoeff());
      worst_p = std::max(worst_p, (sign_sample(sample, model.mu()).values() - p.values()).cwiseAbs().maxCoeff());
    }
    worst_rho = std::max(worst_rho, gamma_rho);
    per_gamma += " gamma=" + fmt(gamma) + ":" + fmt(gamma_rho);
  }
  return {worst_rho <= 0.03 && worst_p <= 0.01,
          "nu=3; max |rho_hat - rho| = " + fmt(worst_rho) + " (tol 0.03;" + per_gamma + "), max |p_hat - p| = " +
              fmt(worst_p) + " (tol 0.01)"};
}

// 5
Outcome true_graph_coincidence() {
  const auto rho = pearson_true(load_fixture("uk2010"));
  const auto p = sign_true(rho);
  std::string detail;
  bool ok = true;
  for (double t : {0.1, 0.3, 0.5}) {
    const auto a = market_graph(rho, t).edges();
    const auto b = market_graph(p, threshold_for(MeasureKind::SignProbability, t)).edges();
    ok = ok && a == b;
    detail += " gamma0=" + fmt(t) + ":" + std::to_string(a.size()) + (a == b ? "=" : "!=") + std::to_string(b.size());
  }
  return {ok, "edge counts" + detail};
}

ExperimentConfig degree_config(std::int64_t n, std::vector<double> grid) {
  ExperimentConfig c;
  c.lambda_source = "fixture:uk2010";
  c.characteristic = Characteristic::DegreeDistribution;
  c.n = n;
  c.replications = 1000;
  c.gamma_grid = std::move(grid);
  c.thresholds = {0.3};
  c.nu = 3;
  c.seed = 6006;
  return c;
}

// 6
Outcome stability_pattern() {
  const auto config = degree_config(100, {0.0, 0.5, 1.0});
  const auto result = run_experiment(config);
  const auto& pair = result.curves.at(0);
  {
    std::ofstream csv(output_dir() / "criterion6.csv");
    write_curves_csv(csv, pair);
    std::ofstream side(output_dir() / "criterion6.json");
    side << nlohmann::json{{"config", config_to_json(config)}, {"outputs", {"criterion6.csv"}}}.dump(2) << '\n';
  }
  const auto& s0 = at_gamma(pair.sign, 0.0);
  const auto& s1 = at_gamma(pair.sign, 1.0);
  const auto& p0 = at_gamma(pair.pearson, 0.0);
  const auto& p1 = at_gamma(pair.pearson, 1.0);
  const double sign_gap = std::abs(s0.mean_divergence - s1.mean_divergence);
  const double sign_se = combined_se(s0, s1);
  const double pearson_gap = p0.mean_divergence - p1.mean_divergence;
  const double pearson_se = combined_se(p0, p1);
  const double ratio = p0.mean_divergence / p1.mean_divergence;
  const bool ok = sign_gap <= 3.0 * sign_se && pearson_gap >= 5.0 * pearson_se && ratio >= 1.2;
  return {ok, "sign |d0-d1| = " + fmt(sign_gap) + " vs 3se = " + fmt(3 * sign_se) + "; pearson d0-d1 = " +
                  fmt(pearson_gap) + " vs 5se = " + fmt(5 * pearson_se) + ", ratio " + fmt(ratio) + " (>= 1.2)" +
                  "; means pearson " + fmt(p0.mean_divergence) + "/" + fmt(p1.mean_divergence) + ", sign " +
                  fmt(s0.mean_divergence) + "/" + fmt(s1.mean_divergence)};
}

// 7
Outcome convergence_in_n() {
  bool ok = true;
  std::string detail;
  const auto small = run_experiment(degree_config(100, {1.0}));
  const auto large = run_experiment(degree_config(250, {1.0}));
  for (auto member : {&CurvePair::pearson, &CurvePair::sign}) {
    const auto& a = (small.curves[0].*member).points[0];
    const auto& b = (large.curves[0].*member).points[0];
    const bool pass = a.mean_divergence - b.mean_divergence > 3.0 * combined_se(a, b);
    ok = ok && pass;
    detail += std::string(to_string((small.curves[0].*member).measure_kind)) + " n=100 " + fmt(a.mean_divergence) +
              " > n=250 " + fmt(b.mean_divergence) + " (3se " + fmt(3 * combined_se(a, b)) + ") ";
  }
  return {ok, detail};
}

// 8
Outcome mst_topology_probability() {
  ExperimentConfig c;
  c.lambda_source = "fixture:uk2010";
  c.characteristic = Characteristic::MstTopology;
  c.replications = 200;
  c.gamma_grid = {1.0};
  c.thresholds = {};
  c.seed = 8008;
  bool ok = true;
  std::string detail;
  c.n = 1000;
  const auto small = run_experiment(c);
  c.n = 10000;
  const auto large = run_experiment(c);
  for (auto member : {&CurvePair::pearson, &CurvePair::sign}) {
    const double a = (small.curves[0].*member).points[0].mean_divergence;
    const double b = (large.curves[0].*member).points[0].mean_divergence;
    ok = ok && a <= b;
    detail += std::string(to_string((small.curves[0].*member).measure_kind)) + " P(match) n=1000 " + fmt(a) +
              " <= n=10000 " + fmt(b) + "; ";
  }
  return {ok, detail};
}

// 9
Outcome cli_determinism() {
  const fs::path dir = output_dir() / "determinism";
  fs::create_directories(dir);
  nlohmann::json config{{"lambda_source", "fixture:uk2010"}, {"characteristic", "degrees"}, {"n", 100},
                        {"replications", 200},             {"gamma_grid", {0.0, 0.5, 1.0}}, {"thresholds", {0.3}},
                        {"seed", 9009}};
  std::ofstream(dir / "config.json") << config.dump(2);
  std::ostringstream sink;
  const int a = run_cli({"--workers", "1", "experiment", (dir / "config.json").string(), (dir / "a.csv").string()},
                        sink, sink);
  const int b = run_cli({"--workers", "4", "experiment", (dir / "config.json").string(), (dir / "b.csv").string()},
                        sink, sink);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string ta = slurp(dir / "a.csv");
  const std::string tb = slurp(dir / "b.csv");
  const bool ok = a == 0 && b == 0 && !ta.empty() && ta == tb;
  return {ok, "exit codes " + std::to_string(a) + "/" + std::to_string(b) + ", workers 1 vs 4, " +
                  (ta == tb ? "byte-identical" : "DIFFERENT") + " (" + std::to_string(ta.size()) + " bytes)"};
}

// 10
Outcome metric_properties() {
  std::mt19937_64 rng(1010);
  std::bernoulli_distribution coin(0.35);
  auto random_graph = [&](int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    return MarketGraph(n, edges);
  };
  std::uniform_int_distribution<int> size(2, 14);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = size(rng);
    const MarketGraph gx = random_graph(n), gy = random_graph(n), gz = random_graph(n);
    const auto dx = degree_distribution(gx), dy = degree_distribution(gy), dz = degree_distribution(gz);
    const auto cx = max_clique(gx), cy = max_clique(gy), cz = max_clique(gz);

    auto check = [&](auto dist, const auto& x, const auto& y, const auto& z, auto equal) {
      const long xy = dist(x, y), yx = dist(y, x), xz = dist(x, z), zy = dist(z, y);
      if (xy < 0 || dist(x, x) != 0) ++violations;
      if ((xy == 0) != equal(x, y)) ++violations;
      if (xy != yx) ++violations;
      if (xy > xz + zy) ++violations;
    };
    check(degree_divergence, dx, dy, dz, [](const auto& a, const auto& b) { return a.counts == b.counts; });
    check(vertex_set_divergence, cx, cy, cz, [](const auto& a, const auto& b) { return a.members == b.members; });
  }
  return {violations == 0, std::to_string(violations) + " violations over 1000 random triples"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 arcsine identity", arcsine_identity},
      {"2 clique/MIS brute-force oracle", clique_oracle},
      {"3 MST enumeration oracle", mst_oracle},
      {"4 estimator consistency", estimator_consistency},
      {"5 true-graph coincidence", true_graph_coincidence},
      {"6 stability pattern", stability_pattern},
      {"7 convergence in n", convergence_in_n},
      {"8 MST topology probability", mst_topology_probability},
      {"9 CLI determinism", cli_determinism},
      {"10 divergence metric properties", metric_properties},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << outcome.detail << " [" << fmt(secs.count())
              << " s]" << std::endl;
    failed += outcome.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed;
}
