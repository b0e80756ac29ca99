#pragma once

#include <Eigen/Core>

#include "weitz/exterior.hpp"

namespace weitz {

/// Element of the Clifford algebra of (V, g), identified with ΛV.
///
/// Coefficient `mask` multiplies the basis element e_{s_1}·…·e_{s_k}, which
/// equals e_{s_1}∧…∧e_{s_k} for increasing s_i. The product satisfies
/// e·f = e∧f − g(e,f), so e_i·e_i = −1.
class CliffordElement {
 public:
  explicit CliffordElement(const AlgebraContext& ctx);
  CliffordElement(const AlgebraContext& ctx, Eigen::VectorXd coeffs);

  static CliffordElement scalar(const AlgebraContext& ctx, double value);
  static CliffordElement blade(const AlgebraContext& ctx, const MultiIndex& index, double coeff = 1.0);
  /// Basis vector e_i, 1-based.
  static CliffordElement generator(const AlgebraContext& ctx, int i);
  /// Σ_i v_i e_i for a length-n vector.
  static CliffordElement vector(const AlgebraContext& ctx, const Eigen::VectorXd& v);

  const AlgebraContext& context() const noexcept { return *ctx_; }
  const Eigen::VectorXd& coeffs() const noexcept { return coeffs_; }
  double coeff(const MultiIndex& index) const;

  /// Keeps only the grade-k part.
  CliffordElement degree_component(int k) const;
  /// True when every coefficient outside grade k vanishes exactly.
  bool is_homogeneous(int k) const noexcept;

  double norm() const noexcept { return coeffs_.norm(); }

  CliffordElement& operator+=(const CliffordElement& other);
  CliffordElement& operator-=(const CliffordElement& other);
  CliffordElement& operator*=(double s) noexcept {
    coeffs_ *= s;
    return *this;
  }

  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
  friend CliffordElement operator*(double s, CliffordElement a) noexcept { return a *= s; }

 private:
  const AlgebraContext* ctx_;
  Eigen::VectorXd coeffs_;
};

/// e_i ∧ a (1-based i).
CliffordElement wedge_generator(int i, const CliffordElement& a);

/// Interior product i_{e_i} a, the adjoint of e_i ∧ · under the Frobenius pairing.
CliffordElement interior(int i, const CliffordElement& a);

/// e_i · a = e_i ∧ a − i_{e_i} a.
CliffordElement left_mul_generator(int i, const CliffordElement& a);

/// Associative Clifford product, built from iterated generator products.
CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b);

inline CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
  return clifford_mul(a, b);
}

/// ad_φ(ψ) = φ·ψ − ψ·φ. Preserves grades of ψ when φ has grade 2.
CliffordElement ad(const CliffordElement& phi, const CliffordElement& psi);

/// Frobenius pairing on the subset basis.
double inner(const CliffordElement& a, const CliffordElement& b);

}  // namespace weitz
