#include "netstab/ingestion.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "netstab/error.hpp"

namespace netstab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  while (true) {
    const auto comma = line.find(',');
    cells.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return cells;
}

}  // namespace

PriceTable parse_prices(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("price file is empty");
  PriceTable table;
  std::set<std::string, std::less<>> seen;
  for (auto name : split(line)) {
    if (name.empty()) throw FormatError("empty ticker name in header");
    if (!seen.emplace(name).second) throw FormatError("duplicate ticker '" + std::string(name) + "'");
    table.tickers.emplace_back(name);
  }
  const std::size_t n = table.tickers.size();

  std::vector<std::vector<double>> days;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto cells = split(line);
    if (cells.size() != n) {
      throw FormatError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(n));
    }
    std::vector<double> prices(n);
    for (std::size_t c = 0; c < n; ++c) {
      const auto cell = cells[c];
      const auto where = "row " + std::to_string(row) + ", column '" + table.tickers[c] + "'";
      if (cell.empty()) throw FormatError(where + ": missing price");
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), prices[c]);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(prices[c])) {
        throw FormatError(where + ": cannot parse '" + std::string(cell) + "'");
      }
      if (!(prices[c] > 0.0)) throw FormatError(where + ": non-positive price " + std::string(cell));
    }
    days.push_back(std::move(prices));
  }
  if (days.size() < 3) throw FormatError("need at least 3 trading days, got " + std::to_string(days.size()));

  table.prices.resize(static_cast<Index>(n), static_cast<Index>(days.size()));
  for (std::size_t t = 0; t < days.size(); ++t) {
    for (std::size_t i = 0; i < n; ++i) table.prices(static_cast<Index>(i), static_cast<Index>(t)) = days[t][i];
  }
  return table;
}

PriceTable load_prices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("no such input: " + path.string());
  return parse_prices(in);
}

SampleMatrix to_returns(const PriceTable& prices) {
  const Index n = prices.prices.rows();
  const Index days = prices.prices.cols();
  if (days < 2) throw SampleSizeError("need at least 2 prices per series");
  RowMatrix r(n, days - 1);
  for (Index i = 0; i < n; ++i) {
    for (Index t = 1; t < days; ++t) r(i, t - 1) = std::log(prices.prices(i, t) / prices.prices(i, t - 1));
  }
  return SampleMatrix(std::move(r));
}

DependenceMatrix build_truth(const SampleMatrix& returns, const std::vector<std::string>& names) {
  try {
    return pearson_sample(returns);
  } catch (const DegenerateError& e) {
    if (e.variable() < names.size()) {
      throw DegenerateError(e.variable(), "series '" + names[e.variable()] + "' has zero variance");
    }
    throw;
  }
}

PdRepair repair_positive_definite(const Matrix& m, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  PdRepair out{m, 0.0, solver.eigenvalues().minCoeff()};
  if (out.min_eigenvalue >= floor) return out;
  // Eigenvalues of (1 - eps) m + eps I are (1 - eps) l + eps.
  out.epsilon = (floor - out.min_eigenvalue) / (1.0 - out.min_eigenvalue);
  out.matrix = (1.0 - out.epsilon) * m + out.epsilon * Matrix::Identity(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) out.matrix(i, i) = m(i, i) == 1.0 ? 1.0 : out.matrix(i, i);
  return out;
}

}  // namespace netstab
