#include "netstab/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "netstab/error.hpp"
#include "netstab/matrix_io.hpp"

namespace netstab {

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Pearson:
      return "pearson";
    case MeasureKind::SignProbability:
      return "sign";
  }
  return "unknown";
}

MeasureKind parse_measure_kind(std::string_view text) {
  if (text == "pearson") return MeasureKind::Pearson;
  if (text == "sign" || text == "sign-probability") return MeasureKind::SignProbability;
  throw KindError("unknown measure kind '" + std::string(text) + "'");
}

DependenceMatrix::DependenceMatrix(MeasureKind kind, Matrix values, std::optional<Index> n_source)
    : kind_(kind), values_(std::move(values)), n_source_(n_source) {
  if (values_.rows() != values_.cols() || values_.rows() == 0) {
    throw ShapeError("dependence matrix must be square and non-empty");
  }
  const double lo = kind_ == MeasureKind::Pearson ? -1.0 : 0.0;
  for (Index i = 0; i < values_.rows(); ++i) {
    if (values_(i, i) != 1.0) {
      throw RangeError("dependence matrix diagonal must be 1, entry " + std::to_string(i) + " is " +
                       format_double(values_(i, i)));
    }
    for (Index j = 0; j < i; ++j) {
      const double v = values_(i, j);
      if (v != values_(j, i)) {
        throw ShapeError("dependence matrix is not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
      if (!(v >= lo && v <= 1.0)) {
        throw RangeError("dependence value " + format_double(v) + " at (" + std::to_string(i) + "," +
                         std::to_string(j) + ") outside the " + std::string(to_string(kind_)) + " range");
      }
    }
  }
}

double sign_probability(double rho) { return 0.5 + std::asin(rho) / std::numbers::pi; }

DependenceMatrix pearson_true(const Matrix& lambda) {
  if (lambda.rows() != lambda.cols() || lambda.rows() == 0) {
    throw ShapeError("scale matrix must be square and non-empty");
  }
  const Index n = lambda.rows();
  for (Index i = 0; i < n; ++i) {
    if (!(lambda(i, i) > 0.0)) {
      throw DegenerateError(static_cast<std::size_t>(i),
                            "scale matrix diagonal entry " + std::to_string(i) + " is not positive");
    }
  }
  Matrix rho(n, n);
  for (Index i = 0; i < n; ++i) {
    rho(i, i) = 1.0;
    for (Index j = 0; j < i; ++j) {
      const double v = std::clamp(lambda(i, j) / std::sqrt(lambda(i, i) * lambda(j, j)), -1.0, 1.0);
      rho(i, j) = v;
      rho(j, i) = v;
    }
  }
  return DependenceMatrix(MeasureKind::Pearson, std::move(rho));
}

DependenceMatrix sign_true(const DependenceMatrix& rho) {
  if (rho.kind() != MeasureKind::Pearson) throw KindError("sign_true expects a Pearson matrix");
  const Index n = rho.size();
  Matrix p(n, n);
  for (Index i = 0; i < n; ++i) {
    p(i, i) = 1.0;
    for (Index j = 0; j < i; ++j) {
      const double r = rho(i, j);
      if (std::abs(r) > 1.0 + 1e-12) throw RangeError("correlation " + format_double(r) + " outside [-1, 1]");
      const double v = sign_probability(std::clamp(r, -1.0, 1.0));
      p(i, j) = v;
      p(j, i) = v;
    }
  }
  return DependenceMatrix(MeasureKind::SignProbability, std::move(p));
}

Vector sample_mean(const SampleMatrix& sample) { return sample.data().rowwise().mean(); }

namespace {

// Below this many multiply-adds the estimators stay single-threaded.
constexpr Index kParallelWork = 1 << 16;

bool parallel_worthwhile(Index work) {
#ifdef _OPENMP
  return work >= kParallelWork && !omp_in_parallel();
#else
  (void)work;
  return false;
#endif
}

void check_not_constant(const SampleMatrix& sample) {
  const auto& x = sample.data();
  for (Index i = 0; i < x.rows(); ++i) {
    if (x.row(i).minCoeff() == x.row(i).maxCoeff()) {
      throw DegenerateError(static_cast<std::size_t>(i),
                            "variable " + std::to_string(i) + " has zero sample variance");
    }
  }
}

void check_center(const SampleMatrix& sample, const Vector& center) {
  if (center.size() != sample.variables()) {
    throw ShapeError("center has length " + std::to_string(center.size()) + ", sample has " +
                     std::to_string(sample.variables()) + " variables");
  }
}

Matrix finish_pearson(Matrix r) {
  const Index n = r.rows();
  for (Index i = 0; i < n; ++i) {
    r(i, i) = 1.0;
    for (Index j = 0; j < i; ++j) {
      const double v = std::clamp(r(i, j), -1.0, 1.0);
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return r;
}

}  // namespace

DependenceMatrix pearson_sample(const SampleMatrix& sample) {
  check_not_constant(sample);
  const Index vars = sample.variables();
  const Index n = sample.size();
  RowMatrix z(vars, n);
  const bool parallel = parallel_worthwhile(vars * vars * n);

  // Rows become unit vectors after centering, so correlations are plain dot
  // products.
#pragma omp parallel for schedule(static) if (parallel)
  for (Index i = 0; i < vars; ++i) {
    const auto row = sample.data().row(i);
    const double mean = row.mean();
    z.row(i) = row.array() - mean;
    z.row(i) /= z.row(i).norm();
  }

  Matrix r(vars, vars);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (Index i = 0; i < vars; ++i) {
    for (Index j = 0; j <= i; ++j) {
      const double v = z.row(i).dot(z.row(j));
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return DependenceMatrix(MeasureKind::Pearson, finish_pearson(std::move(r)), n);
}

DependenceMatrix sign_sample(const SampleMatrix& sample, const Vector& center) {
  check_center(sample, center);
  const Index vars = sample.variables();
  const Index n = sample.size();
  const Index words = (n + 63) / 64;
  const bool parallel = parallel_worthwhile(vars * vars * words * 8);

  // Strictly positive and strictly negative deviations as packed bitsets; a
  // pair coincides when both are positive or both negative.
  std::vector<std::uint64_t> positive(static_cast<std::size_t>(vars * words), 0);
  std::vector<std::uint64_t> negative(positive.size(), 0);
#pragma omp parallel for schedule(static) if (parallel)
  for (Index i = 0; i < vars; ++i) {
    auto* pos = positive.data() + i * words;
    auto* neg = negative.data() + i * words;
    for (Index t = 0; t < n; ++t) {
      const double d = sample(i, t) - center[i];
      const std::uint64_t bit = std::uint64_t{1} << (t % 64);
      if (d > 0.0) pos[t / 64] |= bit;
      if (d < 0.0) neg[t / 64] |= bit;
    }
  }

  Matrix p(vars, vars);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (Index i = 0; i < vars; ++i) {
    p(i, i) = 1.0;
    for (Index j = 0; j < i; ++j) {
      long count = 0;
      for (Index w = 0; w < words; ++w) {
        count += std::popcount(positive[i * words + w] & positive[j * words + w]);
        count += std::popcount(negative[i * words + w] & negative[j * words + w]);
      }
      const double v = static_cast<double>(count) / static_cast<double>(n);
      p(i, j) = v;
      p(j, i) = v;
    }
  }
  return DependenceMatrix(MeasureKind::SignProbability, std::move(p), n);
}

namespace reference {

DependenceMatrix pearson_sample(const SampleMatrix& sample) {
  check_not_constant(sample);
  const Index vars = sample.variables();
  const Index n = sample.size();
  std::vector<double> mean(static_cast<std::size_t>(vars), 0.0);
  for (Index i = 0; i < vars; ++i) {
    double s = 0.0;
    for (Index t = 0; t < n; ++t) s += sample(i, t);
    mean[i] = s / static_cast<double>(n);
  }
  Matrix r(vars, vars);
  for (Index i = 0; i < vars; ++i) {
    for (Index j = 0; j < vars; ++j) {
      double sxy = 0.0, sxx = 0.0, syy = 0.0;
      for (Index t = 0; t < n; ++t) {
        const double dx = sample(i, t) - mean[i];
        const double dy = sample(j, t) - mean[j];
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
      }
      r(i, j) = sxy / std::sqrt(sxx * syy);
    }
  }
  return DependenceMatrix(MeasureKind::Pearson, finish_pearson(std::move(r)), n);
}

DependenceMatrix sign_sample(const SampleMatrix& sample, const Vector& center) {
  check_center(sample, center);
  const Index vars = sample.variables();
  const Index n = sample.size();
  Matrix p(vars, vars);
  for (Index i = 0; i < vars; ++i) {
    p(i, i) = 1.0;
    for (Index j = 0; j < i; ++j) {
      long count = 0;
      for (Index t = 0; t < n; ++t) {
        if ((sample(i, t) - center[i]) * (sample(j, t) - center[j]) > 0.0) ++count;
      }
      p(i, j) = p(j, i) = static_cast<double>(count) / static_cast<double>(n);
    }
  }
  return DependenceMatrix(MeasureKind::SignProbability, std::move(p), n);
}

}  // namespace reference

BigInt hypothesis_count_market_graph(unsigned vertices) {
  if (vertices < 1) throw RangeError("vertex count must be >= 1");
  const auto pairs = static_cast<unsigned long>(vertices) * (vertices - 1) / 2;
  BigInt one = 1;
  return one << pairs;
}

BigInt spanning_tree_count(unsigned vertices) {
  if (vertices < 2) throw RangeError("spanning tree count needs N >= 2");
  return boost::multiprecision::pow(BigInt(vertices), vertices - 2);
}

void write_dependence_csv(std::ostream& out, const DependenceMatrix& m) {
  write_matrix_csv(out, m.values(), "kind=" + std::string(to_string(m.kind())));
}

}  // namespace netstab
