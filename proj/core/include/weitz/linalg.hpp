#pragma once

#include <Eigen/Core>

#include <optional>

#include "weitz/exterior.hpp"

namespace weitz {

/// Modified Gram–Schmidt on the columns of `span`. Returns nullopt when a
/// column's residual norm falls below `rel_pivot_tol` times its original norm.
std::optional<Eigen::MatrixXd> gram_schmidt(const Eigen::MatrixXd& span, double rel_pivot_tol);

/// Coefficients of v_1∧…∧v_p in the standard basis of Λ^p V, where the v_i are
/// the columns of `vectors` (n x p). Entry rank(I) is the p x p minor on rows I.
Eigen::VectorXd decomposable(const AlgebraContext& ctx, const Eigen::MatrixXd& vectors);

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k pairs with values(k)
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops to
/// `tol` times the matrix norm (absolute `tol` for the zero matrix).
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& symmetric, double tol = 1e-12, int max_sweeps = 100);

}  // namespace weitz

namespace weitz {

/// k! as a double; k <= 170.
double factorial(int k) noexcept;

}  // namespace weitz
