#pragma once

#include <Eigen/Core>

#include <limits>

#include "weitz/exterior.hpp"

namespace weitz {

/// A (p,q) double form: a bilinear form on Λ^p V × Λ^q V.
///
/// Coefficients are stored densely in the lexicographic standard basis, so
/// entry (rank(I), rank(J)) is ω(e_I, e_J). Degrees above n are allowed and
/// carry an empty matrix (Λ^{>n} V = 0).
class DoubleForm {
 public:
  /// Zero form of degree (p,q).
  DoubleForm(const AlgebraContext& ctx, int p, int q);
  DoubleForm(const AlgebraContext& ctx, int p, int q, Eigen::MatrixXd coeffs);

  /// The (0,0) form with value `value`.
  static DoubleForm scalar(const AlgebraContext& ctx, double value);

  const AlgebraContext& context() const noexcept { return *ctx_; }
  int dim() const noexcept { return ctx_->dim(); }
  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  const Eigen::MatrixXd& coeffs() const noexcept { return coeffs_; }

  /// ω(e_I, e_J) for increasing multi-indices of the matching degrees.
  double operator()(const MultiIndex& row, const MultiIndex& col) const;

  /// ω(e_I, e_J) addressed by masks; zero when a degree does not match.
  double at(Mask row, Mask col) const noexcept;

  /// Value of a (0,0) form.
  double value() const;

  double norm() const noexcept { return coeffs_.norm(); }
  DoubleForm transpose() const;
  bool is_symmetric(double rel_tol = 0.0) const noexcept;

  DoubleForm& operator+=(const DoubleForm& other);
  DoubleForm& operator-=(const DoubleForm& other);
  DoubleForm& operator*=(double s) noexcept;

  friend DoubleForm operator+(DoubleForm a, const DoubleForm& b) { return a += b; }
  friend DoubleForm operator-(DoubleForm a, const DoubleForm& b) { return a -= b; }
  friend DoubleForm operator-(DoubleForm a) { return a *= -1.0; }
  friend DoubleForm operator*(double s, DoubleForm a) noexcept { return a *= s; }
  friend DoubleForm operator*(DoubleForm a, double s) noexcept { return a *= s; }
  friend DoubleForm operator/(DoubleForm a, double s) noexcept { return a *= 1.0 / s; }

 private:
  const AlgebraContext* ctx_;
  int p_;
  int q_;
  Eigen::MatrixXd coeffs_;
};

/// Kulkarni–Nomizu product of a (p,q) and an (r,s) form; a (p+r, q+s) form.
DoubleForm kn_product(const DoubleForm& a, const DoubleForm& b);

inline DoubleForm operator*(const DoubleForm& a, const DoubleForm& b) { return kn_product(a, b); }

/// The metric g as a (1,1) form (identity matrix).
DoubleForm metric(const AlgebraContext& ctx);

/// g^k = k!·identity on Λ^k V. Throws kInvalidDegree for k outside [0, n].
DoubleForm metric_power(int k, const AlgebraContext& ctx);

/// cω(x, y) = Σ_m ω(e_m∧x, e_m∧y); lowers (p,q) to (p−1,q−1).
DoubleForm contract(const DoubleForm& form);

/// k-fold contraction; contract(form, 0) returns the form unchanged.
DoubleForm contract(const DoubleForm& form, int k);

/// Frobenius pairing in the standard basis; zero across different degrees.
double inner(const DoubleForm& a, const DoubleForm& b);

/// Generalized Hodge star ∗ω(x, y) = ω(∗x, ∗y); maps (p,q) to (n−p, n−q).
DoubleForm star(const DoubleForm& form);

/// Largest absolute first-Bianchi sum over basis tuples. Requires q >= 1.
double bianchi_residual(const DoubleForm& form);

/// K_ω(P) for a symmetric (p,p) form and a plane spanned by the p columns of
/// `span`. Throws kDegeneratePlane for a rank-deficient span.
double sectional(const DoubleForm& form, const Eigen::MatrixXd& span);

/// Symmetric (2,2) form satisfying the first Bianchi identity.
class CurvatureTensor {
 public:
  static constexpr double kDefaultBianchiTol = 1e-12;

  /// Validates degree (2,2), symmetry (asymmetry <= 1e-12·‖ω‖ is symmetrized
  /// away) and bianchi_residual <= bianchi_tol·max(‖ω‖, 1). Pass an infinite
  /// tolerance to accept forms that violate the identity.
  explicit CurvatureTensor(DoubleForm form, double bianchi_tol = kDefaultBianchiTol);

  const DoubleForm& form() const noexcept { return form_; }
  const AlgebraContext& context() const noexcept { return form_.context(); }
  int dim() const noexcept { return form_.dim(); }
  double bianchi_residual() const noexcept { return residual_; }

 private:
  DoubleForm form_;
  double residual_;
};

/// Orthonormal basis of S²_1(Λ²V) (symmetric Bianchi (2,2) forms).
/// Built once per dimension from the linear Bianchi constraints.
const std::vector<DoubleForm>& bianchi_basis_22(const AlgebraContext& ctx);

/// Orthogonal projection of a symmetric (2,2) form onto S²_1(Λ²V).
DoubleForm project_bianchi(const DoubleForm& form);

}  // namespace weitz
