#include <gtest/gtest.h>

#include "oracles.hpp"
#include "weitz/error.hpp"
#include "weitz/linalg.hpp"
#include "weitz/random.hpp"
#include "weitz/weitzenboeck.hpp"

using namespace weitz;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no weitz::Error thrown";
  return ErrorCode::kConfig;
}

DoubleForm diagonal_11(const AlgebraContext& ctx, const Eigen::VectorXd& d) {
  return DoubleForm(ctx, 1, 1, d.asDiagonal().toDenseMatrix());
}

DoubleForm identity_pp(const AlgebraContext& ctx, int p) {
  const auto size = static_cast<Eigen::Index>(ctx.basis_size(p));
  return DoubleForm(ctx, p, p, Eigen::MatrixXd::Identity(size, size));
}

double min_eigenvalue(const DoubleForm& form) { return jacobi_eigen(form.coeffs()).values(0); }

}  // namespace

TEST(Definition, MatchesFourIndexSum) {
  for (int n = 2; n <= 5; ++n) {
    const auto& ctx = context(n);
    oracle::for_seeds(2, 100 + static_cast<std::uint64_t>(n), [&](std::uint64_t seed) {
      const auto w = random_bianchi_22(seed, std::nullopt, ctx);
      for (int p = 0; p <= n; ++p) {
        EXPECT_LT(oracle::relative(np_definition(w, p), oracle::np_naive(w.form(), p)), 1e-12) << n << " " << p;
      }
    });
  }
}

TEST(Definition, Examples) {
  const auto& ctx = context(5);
  EXPECT_EQ(np_definition(DoubleForm(ctx, 2, 2), 2).norm(), 0.0);
  const auto round = constant_curvature(1.0, ctx);
  for (int p = 0; p <= 5; ++p) {
    EXPECT_LT(oracle::relative(np_definition(round, p), static_cast<double>(p * (5 - p)) * identity_pp(ctx, p)), 1e-13);
  }
  EXPECT_NEAR(np_definition(round, 2).coeffs()(0, 0), 6.0, 1e-13);
  const auto w = random_bianchi_22(7, std::nullopt, ctx);
  EXPECT_LT(oracle::relative(np_definition(w, 1), contract(w.form())), 1e-13);
}

TEST(Definition, IndependentOfFrame) {
  const auto& ctx = context(6);
  Rng rng(11);
  const auto w = random_bianchi_22(3, std::nullopt, ctx);
  for (int p = 1; p <= 5; ++p) {
    const Eigen::MatrixXd frame = extend_to_frame(sample_plane(6, 2, rng), rng);
    EXPECT_LT(oracle::relative(np_definition(w.form(), p, frame), np_definition(w, p)), 1e-12);
  }
  EXPECT_EQ(code_of([&] { np_definition(w.form(), 2, Eigen::MatrixXd::Ones(6, 6)); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([&] { np_definition(w, 7); }), ErrorCode::kInvalidDegree);
}

TEST(Definition, SectionalValueIsFrameSum) {
  const auto& ctx = context(6);
  Rng rng(13);
  const auto w = random_bianchi_22(5, std::nullopt, ctx);
  for (int p = 1; p <= 5; ++p) {
    const Eigen::MatrixXd frame = extend_to_frame(sample_plane(6, p, rng), rng);
    const double expected = np_sectional_sum(w.form(), frame, p);
    EXPECT_NEAR(sectional(np_definition(w, p), frame.leftCols(p)), expected, 1e-11 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Formula, MatchesDefinition) {
  for (int n = 4; n <= 7; ++n) {
    const auto& ctx = context(n);
    oracle::for_seeds(3, 200 + static_cast<std::uint64_t>(n), [&](std::uint64_t seed) {
      const auto w = random_bianchi_22(seed, std::nullopt, ctx);
      for (int p = 2; p <= n - 2; ++p) {
        const auto closed = np_formula(w, p);
        EXPECT_LT(oracle::relative(closed, np_definition(w, p)), 1e-10) << n << " " << p;
        EXPECT_LT(bianchi_residual(closed), 1e-10 * std::max(1.0, closed.norm()));
        EXPECT_TRUE(closed.is_symmetric(1e-12));
      }
    });
  }
}

TEST(Formula, RangeErrors) {
  const auto w = random_bianchi_22(1, std::nullopt, context(5));
  EXPECT_EQ(code_of([&] { np_formula(w, 1); }), ErrorCode::kFormulaRange);
  EXPECT_EQ(code_of([&] { np_formula(w, 4); }), ErrorCode::kFormulaRange);
  EXPECT_EQ(code_of([&] { np_contraction_rhs(w, 2, 3); }), ErrorCode::kFormulaRange);
  EXPECT_EQ(code_of([&] { p_curvature_form(w, 4); }), ErrorCode::kFormulaRange);
}

TEST(Adjoint, DegreeTwoForm) {
  const auto& ctx = context(5);
  const auto beta = random_bianchi_22(21, std::nullopt, ctx).form();
  const auto expected = metric(ctx) * contract(beta) - 2.0 * beta;
  EXPECT_LT(oracle::relative(np_adjoint(beta, 2), expected), 1e-13);
}

TEST(Adjoint, PairsWithFormula) {
  const auto& ctx = context(6);
  oracle::for_seeds(20, 300, [&](std::uint64_t seed) {
    const auto w = random_bianchi_22(seed, std::nullopt, ctx);
    const auto beta = random_form(seed ^ 0xabcdefULL, ctx, 3, 3);
    const double lhs = inner(np_formula(w, 3), beta);
    const double rhs = inner(w.form(), np_adjoint(beta, 3));
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs)));
  });
  EXPECT_EQ(code_of([&] { np_adjoint(random_form(1, ctx, 2, 3), 2); }), ErrorCode::kInvalidDegree);
}

TEST(Decomposition, RoundSphere) {
  const auto& ctx = context(5);
  const auto parts = decompose_22(constant_curvature(1.0, ctx));
  EXPECT_NEAR(parts.scalar_part, 0.5, 1e-14);
  EXPECT_LT(parts.weyl.norm(), 1e-13);
  EXPECT_LT(parts.traceless_ricci.norm(), 1e-13);
  EXPECT_EQ(code_of([] { decompose_22(constant_curvature(1.0, context(3))); }), ErrorCode::kUnsupportedDimension);
}

TEST(Decomposition, ComponentsAreTracelessAndReassemble) {
  for (int n = 4; n <= 7; ++n) {
    const auto& ctx = context(n);
    const auto w = random_bianchi_22(400 + static_cast<std::uint64_t>(n), std::nullopt, ctx);
    const auto parts = decompose_22(w);
    EXPECT_LT(oracle::relative(parts.reassemble(), w.form()), 1e-12);
    EXPECT_LT(contract(parts.weyl).norm(), 1e-11 * w.form().norm());
    EXPECT_NEAR(contract(parts.traceless_ricci).value(), 0.0, 1e-11 * w.form().norm());
    for (int p = 2; p <= n - 2; ++p) {
      EXPECT_LT(oracle::relative(np_split(parts, p), np_definition(w, p)), 1e-10);
    }
  }
}

TEST(Decomposition, ConformallyFlatAtHalfDimensionSeesOnlyTheScalar) {
  for (int p : {2, 3}) {
    const auto& ctx = context(2 * p);
    const auto w = random_conformally_flat(17, ctx);
    const auto parts = decompose_22(w);
    EXPECT_LT(parts.weyl.norm(), 1e-11 * w.form().norm());
    const auto expected = 2.0 * parts.scalar_part * static_cast<double>(p * p) * identity_pp(ctx, p);
    EXPECT_LT(oracle::relative(np_definition(w, p), expected), 1e-10);
  }
}

TEST(Contraction, RoundSphereValue) {
  const auto round = constant_curvature(1.0, context(5));
  EXPECT_NEAR(np_contraction_rhs(round, 2, 2).value(), 120.0, 1e-11);
  EXPECT_NEAR(contract(np_definition(round, 2), 2).value(), 120.0, 1e-11);
}

TEST(Contraction, AllOrdersAgreeWithDefinition) {
  for (int n = 4; n <= 7; ++n) {
    const auto& ctx = context(n);
    const auto w = random_bianchi_22(500 + static_cast<std::uint64_t>(n), std::nullopt, ctx);
    for (int p = 2; p <= n - 2; ++p) {
      const auto reference = np_definition(w, p);
      EXPECT_LT(oracle::relative(np_contraction_rhs(w, p, 0), np_formula(w, p)), 1e-12);
      for (int k = 0; k <= p; ++k) {
        EXPECT_LT(oracle::relative(np_contraction_rhs(w, p, k), contract(reference, k)), 1e-10) << n << p << k;
      }
      EXPECT_LT(oracle::relative(np_contraction_einstein(w, p), contract(reference, p - 1)), 1e-10);
    }
  }
}

TEST(PCurvature, SpecialDegrees) {
  const auto& ctx = context(6);
  const auto w = random_bianchi_22(31, std::nullopt, ctx);
  EXPECT_LT(oracle::relative(p_curvature_form(w, 4), star(w.form())), 1e-13);
  EXPECT_NEAR(p_curvature_form(w, 0).value(), 0.5 * contract(w.form(), 2).value(), 1e-11 * w.form().norm());
  EXPECT_NEAR(p_curvature_form(constant_curvature(1.0, context(4)), 0).value(), 6.0, 1e-13);
}

TEST(MidDegree, SidesAgree) {
  struct Case {
    int n, p;
  };
  for (const Case c : {Case{6, 2}, Case{7, 3}, Case{8, 2}}) {
    const auto w = random_bianchi_22(600 + static_cast<std::uint64_t>(c.n), std::nullopt, context(c.n));
    const auto sides = np_midpoint_formula(w, c.p);
    EXPECT_EQ(sides.degree, (c.n + c.p) / 2);
    EXPECT_LT(oracle::relative(sides.lhs, sides.rhs), 1e-10);
  }
  const auto w = random_bianchi_22(1, std::nullopt, context(7));
  EXPECT_EQ(code_of([&] { np_midpoint_formula(w, 2); }), ErrorCode::kFormulaRange);
  EXPECT_EQ(code_of([&] { np_midpoint_formula(w, 5); }), ErrorCode::kFormulaRange);
}

TEST(Spectrum, OperatorMatrix) {
  const auto& ctx = context(4);
  const auto op = operator_matrix(constant_curvature(2.0, ctx).form());
  EXPECT_EQ(op.degree(), 2);
  EXPECT_LT((op.matrix() - 2.0 * Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-14);
  EXPECT_EQ(code_of([&] { operator_matrix(random_form(1, ctx, 2, 2)); }), ErrorCode::kAsymmetricForm);
  EXPECT_EQ(code_of([&] { operator_matrix(random_form(1, ctx, 1, 2)); }), ErrorCode::kAsymmetricForm);
}

TEST(Spectrum, RoundSphereAndZero) {
  for (int n = 3; n <= 6; ++n) {
    const auto round = constant_curvature(1.0, context(n));
    for (int p = 1; p < n; ++p) {
      const auto report = spectrum(operator_matrix(np_definition(round, p)), 10, 1);
      EXPECT_NEAR(report.eigenvalues.minCoeff(), p * (n - p), 1e-12);
      EXPECT_NEAR(report.eigenvalues.maxCoeff(), p * (n - p), 1e-12);
      ASSERT_TRUE(report.min_sampled_sectional.has_value());
      EXPECT_NEAR(*report.min_sampled_sectional, p * (n - p), 1e-12);
    }
  }
  const auto zero = spectrum(operator_matrix(DoubleForm(context(4), 2, 2)), 5, 2);
  EXPECT_EQ(zero.min_eigenvalue, 0.0);
  EXPECT_EQ(zero.sample_count, 5);
}

TEST(Spectrum, SampledSectionalBoundedByEigenvalues) {
  const auto& ctx = context(6);
  oracle::for_seeds(5, 700, [&](std::uint64_t seed) {
    const auto w = random_bianchi_22(seed, std::nullopt, ctx);
    const auto report = spectrum(operator_matrix(np_definition(w, 3)), 50, seed);
    EXPECT_EQ(report.seed, seed);
    EXPECT_LE(report.min_eigenvalue, *report.min_sampled_sectional + 1e-10);
    EXPECT_GE(report.eigenvalues.maxCoeff(), *report.max_sampled_sectional - 1e-10);
  });
}

TEST(Positivity, PositiveCurvatureOperatorGivesPositiveWeitzenboeck) {
  for (int n = 4; n <= 6; ++n) {
    const auto w = perturbed_constant_curvature(800 + static_cast<std::uint64_t>(n), 0.8, context(n));
    ASSERT_GT(min_eigenvalue(w.form()), 0.0);
    for (int p = 1; p < n; ++p) EXPECT_GT(min_eigenvalue(np_definition(w, p)), 0.0);
  }
}

// N_p kills g·h for every traceless symmetric h once n = 2p.
TEST(Counterexample, KernelAtHalfDimension) {
  for (int p : {2, 3}) {
    const auto& ctx = context(2 * p);
    auto h = random_symmetric_11(41, ctx);
    h -= (contract(h).value() / (2.0 * p)) * metric(ctx);
    const CurvatureTensor w(metric(ctx) * h);
    ASSERT_GT(w.form().norm(), 1.0);
    EXPECT_LT(np_definition(w, p).norm(), 1e-12 * w.form().norm());
  }
  const auto& ctx5 = context(5);
  auto h = random_symmetric_11(41, ctx5);
  h -= (contract(h).value() / 5.0) * metric(ctx5);
  EXPECT_GT(np_definition(CurvatureTensor(metric(ctx5) * h), 2).norm(), 1e-3);
}

// Positive scalar curvature at n = 2p+2 with a negative contraction: a product
// of a round 3-sphere with a scaled hyperbolic 3-space.
TEST(Counterexample, PositiveScalarNegativeContraction) {
  const auto& ctx = context(6);
  Eigen::VectorXd a(6), b(6);
  a << 1, 1, 1, 0, 0, 0;
  b << 0, 0, 0, 1, 1, 1;
  const auto pa = diagonal_11(ctx, a);
  const auto pb = diagonal_11(ctx, b);
  const CurvatureTensor w(0.5 * (pa * pa) - 0.45 * (pb * pb));
  EXPECT_NEAR(contract(w.form(), 2).value(), 0.6, 1e-13);
  const auto contracted = contract(np_definition(w, 2));
  const Eigen::VectorXd values = jacobi_eigen(contracted.coeffs()).values;
  EXPECT_NEAR(values(0), -3.0, 1e-12);
  EXPECT_NEAR(values(5), 4.6, 1e-12);
}

// Positive definite Einstein tensor at n = 2p+2 whose contraction still has a
// negative direction.
TEST(Counterexample, PositiveEinsteinNegativeContraction) {
  const auto& ctx = context(6);
  Eigen::VectorXd d(6);
  d << -3.5, 1, 1, 1, 1, 1;
  const CurvatureTensor w(metric(ctx) * diagonal_11(ctx, d));
  Eigen::VectorXd e(6);
  e << 20, 2, 2, 2, 2, 2;
  EXPECT_LT(oracle::relative(einstein_tensor(w), diagonal_11(ctx, e)), 1e-13);
  const Eigen::VectorXd values = jacobi_eigen(contract(np_definition(w, 2)).coeffs()).values;
  EXPECT_NEAR(values(0), -10.0, 1e-11);
  EXPECT_NEAR(values(1), 26.0, 1e-11);
}

TEST(Positivity, RicciPositiveContractionAboveThreshold) {
  for (int n : {6, 7, 8}) {
    const auto w = perturbed_constant_curvature(900 + static_cast<std::uint64_t>(n), 0.9, context(n));
    ASSERT_GT(min_eigenvalue(contract(w.form())), 0.0);
    for (int p = 2; 2 * p + 2 <= n; ++p) EXPECT_GT(min_eigenvalue(contract(np_formula(w, p), p - 1)), 0.0);
  }
}
