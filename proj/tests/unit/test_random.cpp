#include <gtest/gtest.h>

#include "weitz/error.hpp"
#include "weitz/linalg.hpp"
#include "weitz/random.hpp"
#include "weitz/weitzenboeck.hpp"

using namespace weitz;

TEST(Seeds, MixingSeparatesCells) {
  EXPECT_EQ(mix_seed(42, {1, 2}), mix_seed(42, {1, 2}));
  EXPECT_NE(mix_seed(42, {1, 2}), mix_seed(42, {2, 1}));
  EXPECT_NE(mix_seed(42, {1}), mix_seed(43, {1}));
  EXPECT_NE(mix_seed(42, {}), mix_seed(42, {0}));
}

TEST(Generators, Deterministic) {
  const auto& ctx = context(5);
  EXPECT_EQ(random_form(9, ctx, 2, 3).coeffs(), random_form(9, ctx, 2, 3).coeffs());
  EXPECT_NE(random_form(9, ctx, 2, 3).coeffs(), random_form(10, ctx, 2, 3).coeffs());
  EXPECT_EQ(random_bianchi_22(9, std::nullopt, ctx).form().coeffs(),
            random_bianchi_22(9, std::nullopt, ctx).form().coeffs());
}

TEST(Generators, GaussianScale) {
  const auto& ctx = context(4);
  double total = 0.0;
  long count = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto f = random_form(seed, ctx, 1, 2);
    total += f.coeffs().cwiseAbs().sum();
    count += f.coeffs().size();
  }
  // E|N(0,1)| = sqrt(2/pi) ≈ 0.798
  EXPECT_NEAR(total / static_cast<double>(count), 0.798, 0.02);
}

TEST(Generators, SymmetricOneOne) {
  const auto h = random_symmetric_11(4, context(6));
  EXPECT_EQ(h.p(), 1);
  EXPECT_TRUE(h.is_symmetric());
}

TEST(Generators, BianchiTensors) {
  for (int n = 2; n <= 8; ++n) {
    const auto& ctx = context(n);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto w = random_bianchi_22(seed, std::nullopt, ctx);
      EXPECT_TRUE(w.form().is_symmetric());
      EXPECT_LT(bianchi_residual(w.form()), 1e-12 * std::max(1.0, w.form().norm()));
    }
  }
  const auto single = random_bianchi_22(1, 1, context(5));
  EXPECT_LT(bianchi_residual(single.form()), 1e-12 * single.form().norm());
  EXPECT_THROW(random_bianchi_22(1, 0, context(5)), Error);
}

TEST(Generators, GenericSamplesCarryWeyl) {
  const auto w = random_bianchi_22(77, std::nullopt, context(5));
  EXPECT_GT(decompose_22(w).weyl.norm(), 1e-2 * w.form().norm());
}

TEST(Generators, CurvatureFamilies) {
  const auto& ctx = context(5);
  const auto round = constant_curvature(2.0, ctx);
  for (std::size_t r = 0; r < ctx.basis_size(2); ++r) EXPECT_EQ(round.form().coeffs()(r, r), 2.0);
  EXPECT_EQ(round.form().coeffs().sum(), 20.0);

  const auto flat = decompose_22(random_conformally_flat(3, ctx));
  EXPECT_LT(flat.weyl.norm(), 1e-12);
  EXPECT_GT(flat.traceless_ricci.norm(), 1e-3);

  const auto weyl = random_pure_weyl(3, ctx);
  EXPECT_LT(contract(weyl.form()).norm(), 1e-12 * weyl.form().norm());
  EXPECT_GT(weyl.form().norm(), 1e-3);
}

TEST(Generators, PerturbedRoundStaysPositive) {
  for (int n = 3; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto w = perturbed_constant_curvature(seed, 0.99, context(n));
      EXPECT_GT(jacobi_eigen(w.form().coeffs()).values(0), 0.0);
      EXPECT_NEAR((w.form() - constant_curvature(1.0, context(n)).form()).norm(), 0.99, 1e-12);
    }
  }
}

TEST(Planes, OrthonormalFrames) {
  Rng rng(8);
  for (int n = 1; n <= 8; ++n) {
    for (int p = 0; p <= n; ++p) {
      const Eigen::MatrixXd plane = sample_plane(n, p, rng);
      ASSERT_EQ(plane.rows(), n);
      ASSERT_EQ(plane.cols(), p);
      EXPECT_LT((plane.transpose() * plane - Eigen::MatrixXd::Identity(p, p)).norm(), 1e-13);
      const Eigen::MatrixXd frame = extend_to_frame(plane, rng);
      EXPECT_LT((frame.transpose() * frame - Eigen::MatrixXd::Identity(n, n)).norm(), 1e-13);
      EXPECT_LT((frame.leftCols(p) - plane).norm(), 1e-13);
    }
  }
}
