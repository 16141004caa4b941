#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

#include "netstab/error.hpp"
#include "netstab/matrix_io.hpp"
#include "netstab/measures.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace netstab {
namespace {

using testing::table1;

SampleMatrix random_sample(int vars, int n, std::uint64_t seed) {
  RandomStream rng(seed);
  return draw_mixture(MixtureModel::centered(Matrix::Identity(vars, vars), 3, 0.5), n, rng);
}

TEST(PearsonTrue, Examples) {
  EXPECT_EQ(pearson_true(Matrix::Identity(4, 4)).values(), Matrix::Identity(4, 4));
  Matrix m(2, 2);
  m << 4, 3, 3, 9;
  EXPECT_DOUBLE_EQ(pearson_true(m)(0, 1), 0.5);
  const auto t = pearson_true(table1());
  EXPECT_EQ(t.values(), table1());
  EXPECT_EQ(t.kind(), MeasureKind::Pearson);
  EXPECT_FALSE(t.n_source().has_value());
}

TEST(PearsonTrue, ZeroDiagonalIsDegenerate) {
  Matrix m = Matrix::Identity(3, 3);
  m(1, 1) = 0.0;
  try {
    pearson_true(m);
    FAIL();
  } catch (const DegenerateError& e) {
    EXPECT_EQ(e.variable(), 1u);
  }
}

TEST(SignTrue, ClosedForms) {
  Matrix rho(2, 2);
  auto p_of = [&](double r) {
    rho << 1, r, r, 1;
    return sign_true(DependenceMatrix(MeasureKind::Pearson, rho))(0, 1);
  };
  EXPECT_EQ(p_of(0.0), 0.5);
  EXPECT_EQ(p_of(1.0), 1.0);
  EXPECT_EQ(p_of(-1.0), 0.0);
  EXPECT_NEAR(p_of(0.5), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(sign_true(pearson_true(table1()))(3, 3), 1.0);
}

TEST(SignTrue, MonotoneAndOddSymmetric) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = u(rng), b = u(rng);
    if (a < b) EXPECT_LT(sign_probability(a), sign_probability(b));
    EXPECT_NEAR(sign_probability(-a), 1.0 - sign_probability(a), 1e-15);
  }
}

TEST(SignTrue, RejectsNonPearsonInput) {
  const auto p = sign_true(pearson_true(table1()));
  EXPECT_THROW(sign_true(p), KindError);
}

TEST(DependenceMatrix, EnforcesInvariants) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = m(1, 0) = 1.2;
  EXPECT_THROW(DependenceMatrix(MeasureKind::Pearson, m), RangeError);
  m(0, 1) = m(1, 0) = -0.2;
  EXPECT_NO_THROW(DependenceMatrix(MeasureKind::Pearson, m));
  EXPECT_THROW(DependenceMatrix(MeasureKind::SignProbability, m), RangeError);
  m(0, 1) = 0.3;
  EXPECT_THROW(DependenceMatrix(MeasureKind::Pearson, m), ShapeError);
  Matrix d = Matrix::Identity(2, 2);
  d(1, 1) = 0.9;
  EXPECT_THROW(DependenceMatrix(MeasureKind::Pearson, d), RangeError);
}

TEST(PearsonSample, PerfectDependence) {
  RowMatrix x(3, 5);
  x << 1, 2, 3, 4, 6,  //
      2, 4, 6, 8, 12,  //
      -1, -2, -3, -4, -6;
  const auto r = pearson_sample(SampleMatrix(x));
  EXPECT_DOUBLE_EQ(r(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(r(0, 2), -1.0);
  EXPECT_EQ(r(1, 1), 1.0);
  EXPECT_EQ(*r.n_source(), 5);
}

TEST(PearsonSample, AffineInvariance) {
  const auto s = random_sample(6, 300, 21);
  RowMatrix y = s.data();
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> scale(0.1, 10.0), shift(-5.0, 5.0);
  for (Index i = 0; i < y.rows(); ++i) y.row(i) = (y.row(i).array() * scale(rng) + shift(rng)).matrix();
  const auto a = pearson_sample(s);
  const auto b = pearson_sample(SampleMatrix(y));
  EXPECT_LT((a.values() - b.values()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PearsonSample, ConstantRowNamesVariable) {
  RowMatrix x(3, 4);
  x << 1, 2, 3, 4, 0.1, 0.1, 0.1, 0.1, 5, 1, 2, 3;
  try {
    pearson_sample(SampleMatrix(x));
    FAIL();
  } catch (const DegenerateError& e) {
    EXPECT_EQ(e.variable(), 1u);
  }
}

TEST(PearsonSample, MatchesReferenceKernel) {
  for (auto [vars, n] : {std::pair{5, 40}, std::pair{40, 5000}}) {
    const auto s = random_sample(vars, n, 23);
    const auto fast = pearson_sample(s);
    const auto slow = reference::pearson_sample(s);
    EXPECT_LT((fast.values() - slow.values()).cwiseAbs().maxCoeff(), 1e-12) << vars << "x" << n;
  }
}

TEST(PearsonSample, ConvergesOnTable1Mixture) {
  RandomStream rng(24);
  const auto s = draw_mixture(MixtureModel::centered(table1(), 3, 0.3), 100000, rng);
  EXPECT_NEAR(pearson_sample(s)(5, 7), 0.48, 0.03);
}

TEST(SignSample, IdenticalAndNegatedRows) {
  RowMatrix x(3, 6);
  x << 0.3, -1.2, 2.0, -0.5, 0.7, 1.1,  //
      0.3, -1.2, 2.0, -0.5, 0.7, 1.1,   //
      -0.3, 1.2, -2.0, 0.5, -0.7, -1.1;
  const auto p = sign_sample(SampleMatrix(x), Vector::Zero(3));
  EXPECT_EQ(p(0, 1), 1.0);
  EXPECT_EQ(p(0, 2), 0.0);
  EXPECT_EQ(p(2, 2), 1.0);
}

TEST(SignSample, ZeroProductsDoNotCoincide) {
  RowMatrix x(2, 4);
  x << 0.0, 1.0, -1.0, 2.0,  //
      5.0, 1.0, -1.0, 0.0;
  const auto p = sign_sample(SampleMatrix(x), Vector::Zero(2));
  EXPECT_EQ(p(0, 1), 0.5);
  EXPECT_EQ(reference::sign_sample(SampleMatrix(x), Vector::Zero(2))(0, 1), 0.5);
}

TEST(SignSample, InvariantUnderCubing) {
  const auto s = random_sample(8, 777, 25);
  const RowMatrix cubed = s.data().array().cube().matrix();
  EXPECT_EQ(sign_sample(s, Vector::Zero(8)).values(), sign_sample(SampleMatrix(cubed), Vector::Zero(8)).values());
}

TEST(SignSample, MatchesReferenceExactly) {
  for (auto [vars, n] : {std::pair{4, 63}, std::pair{7, 64}, std::pair{40, 5000}}) {
    const auto s = random_sample(vars, n, 26);
    const Vector center = sample_mean(s);
    EXPECT_EQ(sign_sample(s, center).values(), reference::sign_sample(s, center).values());
  }
}

TEST(SignSample, CenterShapeError) {
  const auto s = random_sample(3, 10, 27);
  EXPECT_THROW(sign_sample(s, Vector::Zero(2)), ShapeError);
}

TEST(SignSample, ConvergesToArcsineLaw) {
  for (double gamma : {0.0, 1.0}) {
    RandomStream rng(28);
    const auto s = draw_mixture(MixtureModel::centered(table1(), 3, gamma), 100000, rng);
    EXPECT_NEAR(sign_sample(s, Vector::Zero(10))(4, 5), 0.5 + std::asin(0.49) / std::numbers::pi, 0.01);
  }
  EXPECT_NEAR(0.5 + std::asin(0.49) / std::numbers::pi, 0.663, 5e-4);
}

TEST(Counting, MarketGraphHypotheses) {
  EXPECT_EQ(hypothesis_count_market_graph(1), 1);
  EXPECT_EQ(hypothesis_count_market_graph(3), 8);
  EXPECT_EQ(hypothesis_count_market_graph(5), 1024);
  const BigInt big = hypothesis_count_market_graph(50);
  EXPECT_EQ(boost::multiprecision::msb(big), 1225u);
  EXPECT_THROW(hypothesis_count_market_graph(0), RangeError);
}

TEST(Counting, CayleyFormula) {
  EXPECT_EQ(spanning_tree_count(2), 1);
  EXPECT_EQ(spanning_tree_count(3), 3);
  EXPECT_EQ(spanning_tree_count(10), 100000000);
  EXPECT_EQ(spanning_tree_count(3), oracle::enumerate_spanning_trees(3, [](const auto&) {}));
  EXPECT_EQ(spanning_tree_count(20).str(), "262144000000000000000000");
  EXPECT_THROW(spanning_tree_count(1), RangeError);
}

TEST(DependenceCsv, RoundTripsWithKindComment) {
  const auto p = sign_true(pearson_true(table1()));
  std::stringstream ss;
  write_dependence_csv(ss, p);
  std::string comment;
  const Matrix back = read_matrix_csv(ss, &comment);
  EXPECT_EQ(comment, "kind=sign");
  EXPECT_EQ(back, p.values());
}

}  // namespace
}  // namespace netstab
