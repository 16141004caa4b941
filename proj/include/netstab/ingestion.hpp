#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "netstab/measures.hpp"
#include "netstab/sampler.hpp"

namespace netstab {

/// N tickers x T trading days of strictly positive prices.
struct PriceTable {
  std::vector<std::string> tickers;
  RowMatrix prices;
};

/// Header row of ticker names, then one row of decimal prices per day.
/// Throws FormatError naming row and column for empty, unparseable or
/// non-positive cells, and for duplicate tickers or fewer than 3 days.
PriceTable parse_prices(std::istream& in);
PriceTable load_prices(const std::filesystem::path& path);

/// Log returns ln(P(t) / P(t-1)); N x (T-1).
SampleMatrix to_returns(const PriceTable& prices);

/// Sample Pearson matrix of the returns. `names` labels degenerate series in
/// errors when given.
DependenceMatrix build_truth(const SampleMatrix& returns, const std::vector<std::string>& names = {});

struct PdRepair {
  Matrix matrix;
  double epsilon = 0.0;          ///< 0 when no repair was needed
  double min_eigenvalue = 0.0;   ///< before repair
};

/// Shrinks toward the identity, (1 - eps) m + eps I, with the smallest eps
/// that lifts the minimum eigenvalue to `floor`.
PdRepair repair_positive_definite(const Matrix& m, double floor = 1e-8);

}  // namespace netstab
