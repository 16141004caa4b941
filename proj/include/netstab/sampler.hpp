#pragma once

#include <cstdint>
#include <random>

#include "netstab/types.hpp"

namespace netstab {

/// Per-task random stream. Never share one across concurrent tasks.
using RandomStream = std::mt19937_64;

/// Lower-triangular L with L * L^T == lambda.
/// Throws DefinitenessError naming the first non-positive pivot.
Matrix cholesky(const Matrix& lambda);

/// Observations of N variables at n time points; rows are variables.
class SampleMatrix {
 public:
  /// Throws SampleSizeError if fewer than two columns, RangeError on a
  /// non-finite entry.
  explicit SampleMatrix(RowMatrix data);

  const RowMatrix& data() const noexcept { return data_; }
  Index variables() const noexcept { return data_.rows(); }
  Index size() const noexcept { return data_.cols(); }
  double operator()(Index variable, Index t) const { return data_(variable, t); }

 private:
  RowMatrix data_;
};

/// gamma * Gaussian(mu, lambda) + (1 - gamma) * Student_nu(mu, lambda).
/// Immutable after construction; the Cholesky factor is computed once.
class MixtureModel {
 public:
  MixtureModel(Vector mu, Matrix lambda, int nu, double gamma);

  /// Zero location vector.
  static MixtureModel centered(Matrix lambda, int nu, double gamma);

  /// Same location, scale and df with a different mixture weight. Reuses the
  /// factorization.
  MixtureModel with_gamma(double gamma) const;

  const Vector& mu() const noexcept { return mu_; }
  const Matrix& lambda() const noexcept { return lambda_; }
  const Matrix& factor() const noexcept { return factor_; }
  int nu() const noexcept { return nu_; }
  double gamma() const noexcept { return gamma_; }
  Index dimension() const noexcept { return mu_.size(); }

 private:
  MixtureModel() = default;

  Vector mu_;
  Matrix lambda_;
  Matrix factor_;
  int nu_ = 3;
  double gamma_ = 1.0;
};

/// mu + L z with z standard normal.
Vector draw_gaussian(const MixtureModel& model, RandomStream& rng);

/// mu + L z / sqrt(w / nu) with w ~ chi-square(nu) independent of z.
Vector draw_student(const MixtureModel& model, RandomStream& rng);

/// n independent columns; each column is Gaussian with probability gamma and
/// Student-t otherwise. Per column the stream yields one uniform, then N
/// normals, then one chi-square variate when the Student component is chosen.
SampleMatrix draw_mixture(const MixtureModel& model, Index n, RandomStream& rng);

}  // namespace netstab
