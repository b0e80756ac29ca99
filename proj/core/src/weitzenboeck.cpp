#include "weitz/weitzenboeck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "weitz/clifford.hpp"
#include "weitz/error.hpp"
#include "weitz/linalg.hpp"
#include "weitz/random.hpp"

namespace weitz {

namespace {

void require_formula_range(int n, int p, const char* op) {
  if (p < 2 || p > n - 2) {
    throw Error(ErrorCode::kFormulaRange, std::string(op) + ": degree " + std::to_string(p) +
                                              " outside [2, " + std::to_string(n - 2) +
                                              "]; use np_definition");
  }
}

void require_symmetric_22(const DoubleForm& omega) {
  if (omega.p() != 2 || omega.q() != 2) {
    throw Error(ErrorCode::kInvalidDegree, "expected a (2,2) double form");
  }
  if (!omega.is_symmetric(1e-12)) {
    throw Error(ErrorCode::kAsymmetricForm, "expected a symmetric (2,2) double form");
  }
}

}  // namespace

DoubleForm np_definition(const DoubleForm& omega, int p, const Eigen::MatrixXd& frame) {
  require_symmetric_22(omega);
  const auto& ctx = omega.context();
  const int n = ctx.dim();
  if (p < 0 || p > n) {
    throw Error(ErrorCode::kInvalidDegree, "np_definition: degree " + std::to_string(p) + " outside [0, n]");
  }
  if (frame.rows() != n || frame.cols() != n ||
      (frame.transpose() * frame - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-10) {
    throw Error(ErrorCode::kDimensionMismatch, "frame must be an orthogonal n x n matrix");
  }

  // φ_ij = f_i·f_j and Ω_{ij,kl} = ω(f_i∧f_j, f_k∧f_l) over frame pairs i<j.
  std::vector<CliffordElement> phi;
  Eigen::MatrixXd pair_coords(static_cast<Eigen::Index>(ctx.basis_size(2)), n * (n - 1) / 2);
  Eigen::Index pair = 0;
  for (int i = 0; i < n; ++i) {
    const auto fi = CliffordElement::vector(ctx, frame.col(i));
    for (int j = i + 1; j < n; ++j) {
      phi.push_back(clifford_mul(fi, CliffordElement::vector(ctx, frame.col(j))));
      Eigen::MatrixXd two(n, 2);
      two << frame.col(i), frame.col(j);
      pair_coords.col(pair++) = decomposable(ctx, two);
    }
  }
  const Eigen::MatrixXd big_omega = pair_coords.transpose() * omega.coeffs() * pair_coords;

  // Row ij of images[I] holds ad_{φ_ij}(e_I) as a full Clifford vector.
  const auto basis = ctx.basis(p);
  const auto dim_cl = Eigen::Index{1} << n;
  std::vector<Eigen::MatrixXd> images(basis.size(), Eigen::MatrixXd(pair, dim_cl));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const auto e = CliffordElement::blade(ctx, MultiIndex::from_mask(basis[b]));
    for (Eigen::Index ij = 0; ij < pair; ++ij) images[b].row(ij) = ad(phi[ij], e).coeffs().transpose();
  }

  const auto size = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd result(size, size);
  for (Eigen::Index J = 0; J < size; ++J) {
    // Σ_kl Ω_{ij,kl} ad_{φ_kl}(e_J), one row per ij.
    const Eigen::MatrixXd weighted = big_omega * images[J];
    for (Eigen::Index I = 0; I <= J; ++I) {
      const double value = 0.25 * images[I].cwiseProduct(weighted).sum();
      result(I, J) = value;
      result(J, I) = value;
    }
  }
  return DoubleForm(ctx, p, p, std::move(result));
}

DoubleForm np_definition(const DoubleForm& omega, int p) {
  return np_definition(omega, p, Eigen::MatrixXd::Identity(omega.dim(), omega.dim()));
}

DoubleForm np_definition(const CurvatureTensor& omega, int p) { return np_definition(omega.form(), p); }

DoubleForm np_formula(const CurvatureTensor& omega, int p) {
  const auto& ctx = omega.context();
  require_formula_range(ctx.dim(), p, "np_formula");
  const DoubleForm& w = omega.form();
  const DoubleForm bracket = kn_product(metric(ctx), contract(w)) / (p - 1) - 2.0 * w;
  return kn_product(bracket, metric_power(p - 2, ctx)) / factorial(p - 2);
}

DoubleForm np_adjoint(const DoubleForm& beta, int p) {
  const auto& ctx = beta.context();
  require_formula_range(ctx.dim(), p, "np_adjoint");
  if (beta.p() != p || beta.q() != p) {
    throw Error(ErrorCode::kInvalidDegree, "np_adjoint: expected a (" + std::to_string(p) + "," +
                                               std::to_string(p) + ") form");
  }
  return kn_product(metric(ctx), contract(beta, p - 1)) / factorial(p - 1) -
         2.0 * contract(beta, p - 2) / factorial(p - 2);
}

DoubleForm KulkarniComponents::reassemble() const {
  const auto& ctx = weyl.context();
  return weyl + kn_product(metric(ctx), traceless_ricci) + scalar_part * metric_power(2, ctx);
}

KulkarniComponents decompose_22(const CurvatureTensor& omega) {
  const auto& ctx = omega.context();
  const int n = ctx.dim();
  if (n < 4) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "Weyl decomposition needs n >= 4, got " + std::to_string(n));
  }
  const DoubleForm& w = omega.form();
  const DoubleForm ricci = contract(w);
  const double scalar = contract(ricci).value();
  const double scalar_part = scalar / (2.0 * n * (n - 1));
  DoubleForm traceless = (ricci - (scalar / n) * metric(ctx)) / (n - 2);
  DoubleForm weyl = w - kn_product(metric(ctx), traceless) - scalar_part * metric_power(2, ctx);
  return {std::move(weyl), std::move(traceless), scalar_part};
}

DoubleForm np_split(const KulkarniComponents& parts, int p) {
  const auto& ctx = parts.weyl.context();
  const int n = ctx.dim();
  if (n < 4) throw Error(ErrorCode::kUnsupportedDimension, "np_split needs n >= 4");
  require_formula_range(n, p, "np_split");
  return kn_product(metric_power(p - 2, ctx), parts.weyl) * (-2.0 / factorial(p - 2)) +
         kn_product(metric_power(p - 1, ctx), parts.traceless_ricci) * ((n - 2 * p) / factorial(p - 1)) +
         metric_power(p, ctx) * (2.0 * (n - p) * parts.scalar_part / factorial(p - 1));
}

DoubleForm np_contraction_rhs(const CurvatureTensor& omega, int p, int k) {
  const auto& ctx = omega.context();
  const int n = ctx.dim();
  require_formula_range(n, p, "np_contraction_rhs");
  if (k < 0 || k > p) {
    throw Error(ErrorCode::kFormulaRange, "contraction order " + std::to_string(k) + " outside [0, p]");
  }
  const DoubleForm& w = omega.form();
  const DoubleForm ricci = contract(w);
  const double scalar = contract(ricci).value();

  if (k == p) {
    return DoubleForm::scalar(ctx, p * factorial(n - 2) / factorial(n - p - 1) * scalar);
  }
  if (k == p - 1) {
    return (factorial(n - 3) / factorial(n - p - 1)) *
           ((n - 2 * p) * ricci + (p - 1) * scalar * metric(ctx));
  }
  const double a = static_cast<double>(n - p - 1) * (p - k - 1);
  const DoubleForm bracket = -2.0 * w + ((n - k - p - 1) / a) * kn_product(metric(ctx), ricci) +
                             (k / (a * (p - k))) * scalar * metric_power(2, ctx);
  const double lead = factorial(n - p + k - 2) / (factorial(n - p - 2) * factorial(p - k - 2));
  return lead * kn_product(metric_power(p - k - 2, ctx), bracket);
}

DoubleForm einstein_tensor(const CurvatureTensor& omega) {
  const DoubleForm ricci = contract(omega.form());
  const double scalar = contract(ricci).value();
  return 0.5 * scalar * metric(omega.context()) - ricci;
}

DoubleForm np_contraction_einstein(const CurvatureTensor& omega, int p) {
  const auto& ctx = omega.context();
  const int n = ctx.dim();
  require_formula_range(n, p, "np_contraction_einstein");
  const double scalar = contract(omega.form(), 2).value();
  return (factorial(n - 3) / factorial(n - p - 1)) *
         (0.5 * (n - 2) * scalar * metric(ctx) - (n - 2 * p) * einstein_tensor(omega));
}

DoubleForm p_curvature_form(const CurvatureTensor& omega, int p) {
  const auto& ctx = omega.context();
  const int n = ctx.dim();
  if (p < 0 || p > n - 2) {
    throw Error(ErrorCode::kFormulaRange, "p-curvature needs 0 <= p <= n-2, got p = " + std::to_string(p));
  }
  return star(kn_product(metric_power(n - p - 2, ctx), omega.form())) / factorial(n - p - 2);
}

MidDegreeSides np_midpoint_formula(const CurvatureTensor& omega, int p) {
  const auto& ctx = omega.context();
  const int n = ctx.dim();
  if ((n + p) % 2 != 0) {
    throw Error(ErrorCode::kFormulaRange, "mid-degree formula needs n + p even");
  }
  const int degree = (n + p) / 2;
  if (p < 2 || p > n - 2 || degree > n - 2) {
    throw Error(ErrorCode::kFormulaRange, "mid-degree formula needs 2 <= p and (n+p)/2 <= n-2");
  }
  const DoubleForm weyl = decompose_22(omega).weyl;
  const double coefficient =
      2.0 * factorial(p - 2) / (factorial((n + p - 4) / 2) * (n + p - 2) * (n - p - 1));
  const DoubleForm bracket =
      (p * (p - 1) / factorial(n - p - 2)) * star(kn_product(metric_power(n - p - 2, ctx), omega.form())) -
      ((n - 1.0) * (n - 2) / factorial(p - 2)) * kn_product(metric_power(p - 2, ctx), weyl);
  return {degree, np_definition(omega, degree),
          coefficient * kn_product(metric_power((n - p) / 2, ctx), bracket)};
}

double np_sectional_sum(const DoubleForm& omega, const Eigen::MatrixXd& frame, int p) {
  require_symmetric_22(omega);
  const int n = omega.dim();
  double sum = 0.0;
  Eigen::MatrixXd two(n, 2);
  for (int i = 0; i < p; ++i) {
    for (int j = p; j < n; ++j) {
      two << frame.col(i), frame.col(j);
      const Eigen::VectorXd v = decomposable(omega.context(), two);
      sum += v.dot(omega.coeffs() * v);
    }
  }
  return sum;
}

OperatorMatrix operator_matrix(const DoubleForm& form) {
  if (form.p() != form.q() || !form.is_symmetric(1e-12)) {
    throw Error(ErrorCode::kAsymmetricForm, "operator_matrix needs a symmetric (p,p) form");
  }
  return OperatorMatrix(form.context(), form.p(), form.coeffs());
}

SpectrumReport spectrum(const OperatorMatrix& op, int sample_planes, std::uint64_t seed) {
  SpectrumReport report;
  const auto eig = jacobi_eigen(op.matrix(), 1e-12);
  report.eigenvalues = eig.values;
  report.jacobi_sweeps = eig.sweeps;
  report.min_eigenvalue = eig.values.size() > 0 ? eig.values(0) : 0.0;
  report.seed = seed;
  report.sample_count = std::max(sample_planes, 0);

  Rng rng(seed);
  const int n = op.context().dim();
  for (int s = 0; s < report.sample_count; ++s) {
    const Eigen::MatrixXd plane = sample_plane(n, op.degree(), rng);
    const Eigen::VectorXd v = decomposable(op.context(), plane);
    const double value = v.dot(op.matrix() * v);
    report.min_sampled_sectional = std::min(report.min_sampled_sectional.value_or(value), value);
    report.max_sampled_sectional = std::max(report.max_sampled_sectional.value_or(value), value);
  }
  return report;
}

}  // namespace weitz
