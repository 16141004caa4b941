#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "netstab/sampler.hpp"
#include "netstab/types.hpp"

namespace netstab {

enum class MeasureKind { Pearson, SignProbability };

std::string_view to_string(MeasureKind kind);
/// Accepts "pearson", "sign" and "sign-probability".
MeasureKind parse_measure_kind(std::string_view text);

/// Symmetric N x N edge-weight matrix with unit diagonal, tagged with the
/// dependence measure it holds. `n_source` is set for sample estimates.
class DependenceMatrix {
 public:
  DependenceMatrix(MeasureKind kind, Matrix values, std::optional<Index> n_source = std::nullopt);

  MeasureKind kind() const noexcept { return kind_; }
  const Matrix& values() const noexcept { return values_; }
  std::optional<Index> n_source() const noexcept { return n_source_; }
  Index size() const noexcept { return values_.rows(); }
  double operator()(Index i, Index j) const { return values_(i, j); }

 private:
  MeasureKind kind_;
  Matrix values_;
  std::optional<Index> n_source_;
};

/// 1/2 + arcsin(rho)/pi: sign-coincidence probability of an elliptical pair
/// with correlation rho.
double sign_probability(double rho);

/// lambda_ij / sqrt(lambda_ii lambda_jj).
DependenceMatrix pearson_true(const Matrix& lambda);

DependenceMatrix sign_true(const DependenceMatrix& rho);

/// Sample correlation with mean centering, clamped to [-1, 1].
DependenceMatrix pearson_sample(const SampleMatrix& sample);

/// Fraction of time points with (x_i - c_i)(x_j - c_j) > 0.
DependenceMatrix sign_sample(const SampleMatrix& sample, const Vector& center);

Vector sample_mean(const SampleMatrix& sample);

/// Straightforward serial versions of the estimators, kept as test oracles
/// and benchmark baselines for the parallel kernels above.
namespace reference {
DependenceMatrix pearson_sample(const SampleMatrix& sample);
DependenceMatrix sign_sample(const SampleMatrix& sample, const Vector& center);
}  // namespace reference

using BigInt = boost::multiprecision::cpp_int;

/// 2^(N(N-1)/2): number of distinct market graphs on N labelled vertices.
BigInt hypothesis_count_market_graph(unsigned vertices);

/// Cayley's N^(N-2). Requires N >= 2.
BigInt spanning_tree_count(unsigned vertices);

/// CSV with a "# kind=<measure>" comment line.
void write_dependence_csv(std::ostream& out, const DependenceMatrix& m);

}  // namespace netstab
