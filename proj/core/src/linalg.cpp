#include "weitz/linalg.hpp"

#include <Eigen/LU>

#include <bit>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "weitz/error.hpp"

namespace weitz {

std::optional<Eigen::MatrixXd> gram_schmidt(const Eigen::MatrixXd& span, double rel_pivot_tol) {
  Eigen::MatrixXd q = span;
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double original = span.col(k).norm();
    // Two passes keep the columns orthogonal to roundoff even after heavy cancellation.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) q.col(k) -= q.col(j).dot(q.col(k)) * q.col(j);
    }
    const double residual = q.col(k).norm();
    if (original == 0.0 || residual < rel_pivot_tol * original) return std::nullopt;
    q.col(k) /= residual;
  }
  return q;
}

Eigen::VectorXd decomposable(const AlgebraContext& ctx, const Eigen::MatrixXd& vectors) {
  if (vectors.rows() != ctx.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "vectors must have n rows");
  }
  const int p = static_cast<int>(vectors.cols());
  const auto basis = ctx.basis(p);
  Eigen::VectorXd out(static_cast<Eigen::Index>(basis.size()));
  Eigen::MatrixXd minor(p, p);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    Eigen::Index row = 0;
    for (Mask rest = basis[r]; rest != 0; rest &= rest - 1) {
      minor.row(row++) = vectors.row(std::countr_zero(rest));
    }
    out(static_cast<Eigen::Index>(r)) = p == 0 ? 1.0 : minor.determinant();
  }
  return out;
}

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& symmetric, double tol, int max_sweeps) {
  const Eigen::Index n = symmetric.rows();
  if (symmetric.cols() != n) throw Error(ErrorCode::kDimensionMismatch, "matrix must be square");

  Eigen::MatrixXd a = 0.5 * (symmetric + symmetric.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm() > 0.0 ? a.norm() : 1.0;

  auto off_norm = [&a, n] {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(sum);
  };

  int sweeps = 0;
  while (off_norm() > tol * scale && sweeps < max_sweeps) {
    ++sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation annihilating a(p,q); t is the smaller root of t² + 2θt − 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweeps;
  return out;
}

}  // namespace weitz

namespace weitz {

double factorial(int k) noexcept {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

}  // namespace weitz
