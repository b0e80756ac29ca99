#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "weitz/linalg.hpp"
#include "weitz/random.hpp"

using namespace weitz;

TEST(Jacobi, AgreesWithEigenSolver) {
  for (int size : {1, 2, 3, 6, 15, 20, 35, 70}) {
    Rng rng(static_cast<std::uint64_t>(size));
    const Eigen::MatrixXd a = gaussian_matrix(rng, size, size);
    const Eigen::MatrixXd m = a + a.transpose();
    const SymmetricEigen mine = jacobi_eigen(m);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m);
    ASSERT_EQ(mine.values.size(), size);
    EXPECT_LT((mine.values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, m.norm())) << size;
    for (Eigen::Index k = 1; k < size; ++k) EXPECT_LE(mine.values(k - 1), mine.values(k));
    const Eigen::MatrixXd rebuilt = mine.vectors * mine.values.asDiagonal() * mine.vectors.transpose();
    EXPECT_LT((rebuilt - m).norm(), 1e-10 * m.norm());
    EXPECT_LT((mine.vectors.transpose() * mine.vectors - Eigen::MatrixXd::Identity(size, size)).norm(), 1e-10);
  }
}

TEST(Jacobi, DiagonalAndZero) {
  const SymmetricEigen zero = jacobi_eigen(Eigen::MatrixXd::Zero(4, 4));
  EXPECT_EQ(zero.values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(zero.sweeps, 0);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 3, -1, 2;
  EXPECT_EQ(jacobi_eigen(d).values, Eigen::Vector3d(-1, 2, 3));
}

TEST(Jacobi, RepeatedEigenvalues) {
  Rng rng(3);
  const Eigen::MatrixXd q = gram_schmidt(gaussian_matrix(rng, 6, 6), 1e-8).value();
  Eigen::VectorXd values(6);
  values << 1, 1, 1, 4, 4, -2;
  const Eigen::MatrixXd m = q * values.asDiagonal() * q.transpose();
  Eigen::VectorXd sorted = values;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  EXPECT_LT((jacobi_eigen(m).values - sorted).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GramSchmidt, OrthonormalizesOrRejects) {
  Rng rng(5);
  const Eigen::MatrixXd span = gaussian_matrix(rng, 6, 4);
  const auto q = gram_schmidt(span, 1e-10);
  ASSERT_TRUE(q.has_value());
  EXPECT_LT((q->transpose() * *q - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-13);
  // Same column space: projecting the span onto q loses nothing.
  EXPECT_LT((*q * (q->transpose() * span) - span).norm(), 1e-12 * span.norm());

  Eigen::MatrixXd dependent = span;
  dependent.col(3) = span.col(0) - 2.0 * span.col(1);
  EXPECT_FALSE(gram_schmidt(dependent, 1e-10).has_value());
}

TEST(Decomposable, MinorsOfTheSpanningVectors) {
  Rng rng(9);
  for (int n = 1; n <= 6; ++n) {
    const auto& ctx = context(n);
    for (int p = 0; p <= n; ++p) {
      const Eigen::MatrixXd v = gaussian_matrix(rng, n, p);
      const Eigen::VectorXd coords = decomposable(ctx, v);
      const auto subsets = oracle::subsets(n, p);
      ASSERT_EQ(coords.size(), static_cast<Eigen::Index>(subsets.size()));
      for (std::size_t r = 0; r < subsets.size(); ++r) {
        Eigen::MatrixXd minor(p, p);
        for (int i = 0; i < p; ++i) minor.row(i) = v.row(subsets[r][static_cast<std::size_t>(i)] - 1);
        const double expected = p == 0 ? 1.0 : oracle::determinant(minor);
        EXPECT_NEAR(coords(static_cast<Eigen::Index>(r)), expected, 1e-12 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}

TEST(Factorial, SmallValues) {
  EXPECT_EQ(factorial(0), 1.0);
  EXPECT_EQ(factorial(1), 1.0);
  EXPECT_EQ(factorial(5), 120.0);
  EXPECT_EQ(factorial(12), 479001600.0);
}
