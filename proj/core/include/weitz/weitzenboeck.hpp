#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>

#include "weitz/double_form.hpp"

namespace weitz {

/// N_p(ω) evaluated from the Clifford sum
///   N_p(ω)(ψ1, ψ2) = ¼ Σ_{i<j, k<l} ω(f_i∧f_j, f_k∧f_l) ⟨ad_{f_i·f_j} ψ1, ad_{f_k·f_l} ψ2⟩
/// over the orthonormal frame f (columns of `frame`; identity by default),
/// entry by entry on the standard basis of Λ^p. Valid for every 0 <= p <= n
/// and any symmetric (2,2) ω. This is the reference every closed form is
/// checked against, so it avoids any curvature-specific shortcut.
DoubleForm np_definition(const DoubleForm& omega, int p, const Eigen::MatrixXd& frame);
DoubleForm np_definition(const DoubleForm& omega, int p);
DoubleForm np_definition(const CurvatureTensor& omega, int p);

/// N_p(ω) = {g·cω/(p−1) − 2ω}·g^{p−2}/(p−2)! for 2 <= p <= n−2.
/// Throws kFormulaRange outside that range.
DoubleForm np_formula(const CurvatureTensor& omega, int p);

/// Adjoint N_p*β = (g·c^{p−1}/(p−1)! − 2c^{p−2}/(p−2)!)β of a (p,p) form, 2 <= p <= n−2.
DoubleForm np_adjoint(const DoubleForm& beta, int p);

/// ω = weyl + g·traceless_ricci + g²·scalar_part.
struct KulkarniComponents {
  DoubleForm weyl;             // (2,2), contraction zero
  DoubleForm traceless_ricci;  // (1,1), trace zero
  double scalar_part;

  DoubleForm reassemble() const;
};

/// Orthogonal decomposition of a (2,2) curvature tensor; requires n >= 4.
KulkarniComponents decompose_22(const CurvatureTensor& omega);

/// N_p assembled from the decomposition, 2 <= p <= n−2.
DoubleForm np_split(const KulkarniComponents& parts, int p);

/// Closed form for c^k(N_p), 0 <= k <= p, 2 <= p <= n−2.
DoubleForm np_contraction_rhs(const CurvatureTensor& omega, int p, int k);

/// E = ½·c²ω·g − cω.
DoubleForm einstein_tensor(const CurvatureTensor& omega);

/// c^{p−1}(N_p) written through the Einstein tensor; same range as above.
DoubleForm np_contraction_einstein(const CurvatureTensor& omega, int p);

/// ∗(g^{n−p−2}ω/(n−p−2)!), whose sectional curvature is the p-curvature; 0 <= p <= n−2.
DoubleForm p_curvature_form(const CurvatureTensor& omega, int p);

struct MidDegreeSides {
  int degree;  // (n+p)/2
  DoubleForm lhs;
  DoubleForm rhs;
};

/// N_{(n+p)/2} (via np_definition) and its expression through the p-curvature
/// form and the Weyl part. Requires n+p even, p >= 2, (n+p)/2 <= n−2.
MidDegreeSides np_midpoint_formula(const CurvatureTensor& omega, int p);

/// Σ_{i<=p<j} ω(f_i∧f_j, f_i∧f_j) over an orthonormal frame whose first p
/// columns span the plane.
double np_sectional_sum(const DoubleForm& omega, const Eigen::MatrixXd& frame, int p);

/// A symmetric (p,p) form viewed as a self-adjoint operator on Λ^p V.
class OperatorMatrix {
 public:
  OperatorMatrix(const AlgebraContext& ctx, int degree, Eigen::MatrixXd matrix)
      : ctx_(&ctx), degree_(degree), matrix_(std::move(matrix)) {}

  const AlgebraContext& context() const noexcept { return *ctx_; }
  int degree() const noexcept { return degree_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

 private:
  const AlgebraContext* ctx_;
  int degree_;
  Eigen::MatrixXd matrix_;
};

/// Throws kAsymmetricForm unless p == q and the matrix is symmetric to 1e-12.
OperatorMatrix operator_matrix(const DoubleForm& form);

struct SpectrumReport {
  Eigen::VectorXd eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
  std::optional<double> min_sampled_sectional;
  std::optional<double> max_sampled_sectional;
  int sample_count = 0;
  std::uint64_t seed = 0;
  int jacobi_sweeps = 0;
};

/// Jacobi eigenvalues plus sectional values on `sample_planes` random p-planes.
SpectrumReport spectrum(const OperatorMatrix& op, int sample_planes, std::uint64_t seed);

}  // namespace weitz
