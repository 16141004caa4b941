#include "netstab/sampler.hpp"

#include <cmath>
#include <string>

#include "netstab/error.hpp"

namespace netstab {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void check_square_symmetric(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ShapeError("scale matrix must be square and non-empty, got " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()));
  }
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < i; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance) {
        throw ShapeError("scale matrix is not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

Matrix cholesky(const Matrix& lambda) {
  check_square_symmetric(lambda);
  const Index n = lambda.rows();
  Matrix factor = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double pivot = lambda(j, j);
    for (Index k = 0; k < j; ++k) pivot -= factor(j, k) * factor(j, k);
    if (!(pivot > 0.0)) throw DefinitenessError(static_cast<std::size_t>(j), pivot);
    const double diag = std::sqrt(pivot);
    factor(j, j) = diag;
    for (Index i = j + 1; i < n; ++i) {
      double sum = lambda(i, j);
      for (Index k = 0; k < j; ++k) sum -= factor(i, k) * factor(j, k);
      factor(i, j) = sum / diag;
    }
  }
  return factor;
}

SampleMatrix::SampleMatrix(RowMatrix data) : data_(std::move(data)) {
  if (data_.cols() < 2) {
    throw SampleSizeError("sample needs at least 2 observations, got " + std::to_string(data_.cols()));
  }
  if (!data_.allFinite()) throw RangeError("sample contains non-finite entries");
}

MixtureModel::MixtureModel(Vector mu, Matrix lambda, int nu, double gamma)
    : mu_(std::move(mu)), lambda_(std::move(lambda)), nu_(nu), gamma_(gamma) {
  if (!(gamma_ >= 0.0 && gamma_ <= 1.0)) {
    throw RangeError("mixture weight gamma must lie in [0, 1], got " + std::to_string(gamma_));
  }
  if (nu_ < 3) throw RangeError("Student degrees of freedom must be >= 3, got " + std::to_string(nu_));
  factor_ = cholesky(lambda_);
  if (mu_.size() != lambda_.rows()) {
    throw ShapeError("location vector has length " + std::to_string(mu_.size()) + ", scale matrix is " +
                     std::to_string(lambda_.rows()) + "x" + std::to_string(lambda_.rows()));
  }
  if (!mu_.allFinite()) throw RangeError("location vector has non-finite entries");
}

MixtureModel MixtureModel::centered(Matrix lambda, int nu, double gamma) {
  const Index n = lambda.rows();
  return MixtureModel(Vector::Zero(n), std::move(lambda), nu, gamma);
}

MixtureModel MixtureModel::with_gamma(double gamma) const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw RangeError("mixture weight gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  MixtureModel copy(*this);
  copy.gamma_ = gamma;
  return copy;
}

namespace {

void fill_normals(Eigen::Ref<Vector> z, std::normal_distribution<double>& normal, RandomStream& rng) {
  for (Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
}

double student_scale(int nu, RandomStream& rng) {
  std::chi_squared_distribution<double> chi2(static_cast<double>(nu));
  const double w = chi2(rng);
  return 1.0 / std::sqrt(w / static_cast<double>(nu));
}

}  // namespace

Vector draw_gaussian(const MixtureModel& model, RandomStream& rng) {
  std::normal_distribution<double> normal;
  Vector z(model.dimension());
  fill_normals(z, normal, rng);
  return model.mu() + model.factor().triangularView<Eigen::Lower>() * z;
}

Vector draw_student(const MixtureModel& model, RandomStream& rng) {
  std::normal_distribution<double> normal;
  Vector z(model.dimension());
  fill_normals(z, normal, rng);
  const double scale = student_scale(model.nu(), rng);
  const Vector x = model.factor().triangularView<Eigen::Lower>() * z;
  return model.mu() + scale * x;
}

SampleMatrix draw_mixture(const MixtureModel& model, Index n, RandomStream& rng) {
  if (n < 2) throw SampleSizeError("sample size must be >= 2, got " + std::to_string(n));
  const Index dim = model.dimension();
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal;

  // Columns of z first, then one triangular product for the whole block.
  Matrix z(dim, n);
  Vector scale(n);
  for (Index t = 0; t < n; ++t) {
    const bool gaussian = uniform(rng) < model.gamma();
    fill_normals(z.col(t), normal, rng);
    scale[t] = gaussian ? 1.0 : student_scale(model.nu(), rng);
  }
  Matrix x = model.factor().triangularView<Eigen::Lower>() * z;
  RowMatrix data(dim, n);
  for (Index t = 0; t < n; ++t) data.col(t) = model.mu() + scale[t] * x.col(t);
  return SampleMatrix(std::move(data));
}

}  // namespace netstab
