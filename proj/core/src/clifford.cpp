#include "weitz/clifford.hpp"

#include <bit>
#include <string>

#include "weitz/error.hpp"

namespace weitz {

namespace {

void require_same_context(const CliffordElement& a, const CliffordElement& b) {
  if (!(a.context() == b.context())) {
    throw Error(ErrorCode::kDimensionMismatch, "Clifford elements from different dimensions");
  }
}

int checked_bit(const AlgebraContext& ctx, int i) {
  if (i < 1 || i > ctx.dim()) {
    throw Error(ErrorCode::kInvalidIndex, "generator index " + std::to_string(i) + " out of range");
  }
  return i - 1;
}

}  // namespace

CliffordElement::CliffordElement(const AlgebraContext& ctx)
    : ctx_(&ctx), coeffs_(Eigen::VectorXd::Zero(Eigen::Index{1} << ctx.dim())) {}

CliffordElement::CliffordElement(const AlgebraContext& ctx, Eigen::VectorXd coeffs)
    : ctx_(&ctx), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != (Eigen::Index{1} << ctx.dim())) {
    throw Error(ErrorCode::kDimensionMismatch, "Clifford coefficient vector must have 2^n entries");
  }
}

CliffordElement CliffordElement::scalar(const AlgebraContext& ctx, double value) {
  CliffordElement out(ctx);
  out.coeffs_(0) = value;
  return out;
}

CliffordElement CliffordElement::blade(const AlgebraContext& ctx, const MultiIndex& index, double coeff) {
  if ((index.mask() & ~ctx.full_mask()) != 0) {
    throw Error(ErrorCode::kInvalidIndex, "blade index exceeds dimension");
  }
  CliffordElement out(ctx);
  out.coeffs_(index.mask()) = coeff;
  return out;
}

CliffordElement CliffordElement::generator(const AlgebraContext& ctx, int i) {
  CliffordElement out(ctx);
  out.coeffs_(Eigen::Index{1} << checked_bit(ctx, i)) = 1.0;
  return out;
}

CliffordElement CliffordElement::vector(const AlgebraContext& ctx, const Eigen::VectorXd& v) {
  if (v.size() != ctx.dim()) throw Error(ErrorCode::kDimensionMismatch, "vector must have n entries");
  CliffordElement out(ctx);
  for (Eigen::Index i = 0; i < v.size(); ++i) out.coeffs_(Eigen::Index{1} << i) = v(i);
  return out;
}

double CliffordElement::coeff(const MultiIndex& index) const {
  if ((index.mask() & ~ctx_->full_mask()) != 0) {
    throw Error(ErrorCode::kInvalidIndex, "blade index exceeds dimension");
  }
  return coeffs_(index.mask());
}

CliffordElement CliffordElement::degree_component(int k) const {
  CliffordElement out(*ctx_);
  for (Eigen::Index m = 0; m < coeffs_.size(); ++m) {
    if (std::popcount(static_cast<Mask>(m)) == k) out.coeffs_(m) = coeffs_(m);
  }
  return out;
}

bool CliffordElement::is_homogeneous(int k) const noexcept {
  for (Eigen::Index m = 0; m < coeffs_.size(); ++m) {
    if (std::popcount(static_cast<Mask>(m)) != k && coeffs_(m) != 0.0) return false;
  }
  return true;
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& other) {
  require_same_context(*this, other);
  coeffs_ += other.coeffs_;
  return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& other) {
  require_same_context(*this, other);
  coeffs_ -= other.coeffs_;
  return *this;
}

CliffordElement wedge_generator(int i, const CliffordElement& a) {
  const int bit = checked_bit(a.context(), i);
  const Mask e = Mask{1} << bit;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.coeffs().size());
  for (Eigen::Index m = 0; m < a.coeffs().size(); ++m) {
    const auto s = static_cast<Mask>(m);
    if ((s & e) || a.coeffs()(m) == 0.0) continue;
    const double sign = (count_below(s, bit) & 1) ? -1.0 : 1.0;
    out(s | e) += sign * a.coeffs()(m);
  }
  return CliffordElement(a.context(), std::move(out));
}

CliffordElement interior(int i, const CliffordElement& a) {
  const int bit = checked_bit(a.context(), i);
  const Mask e = Mask{1} << bit;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.coeffs().size());
  for (Eigen::Index m = 0; m < a.coeffs().size(); ++m) {
    const auto s = static_cast<Mask>(m);
    if (!(s & e) || a.coeffs()(m) == 0.0) continue;
    const double sign = (count_below(s, bit) & 1) ? -1.0 : 1.0;
    out(s & ~e) += sign * a.coeffs()(m);
  }
  return CliffordElement(a.context(), std::move(out));
}

CliffordElement left_mul_generator(int i, const CliffordElement& a) {
  return wedge_generator(i, a) - interior(i, a);
}

CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b) {
  require_same_context(a, b);
  const auto& ctx = a.context();
  CliffordElement out(ctx);
  for (Eigen::Index m = 0; m < a.coeffs().size(); ++m) {
    const double coeff = a.coeffs()(m);
    if (coeff == 0.0) continue;
    // e_{s_1}·…·e_{s_k}·b, applying the rightmost generator first.
    CliffordElement term = b;
    for (int bit = ctx.dim() - 1; bit >= 0; --bit) {
      if ((static_cast<Mask>(m) >> bit) & 1U) term = left_mul_generator(bit + 1, term);
    }
    out += coeff * term;
  }
  return out;
}

CliffordElement ad(const CliffordElement& phi, const CliffordElement& psi) {
  return clifford_mul(phi, psi) - clifford_mul(psi, phi);
}

double inner(const CliffordElement& a, const CliffordElement& b) {
  require_same_context(a, b);
  return a.coeffs().dot(b.coeffs());
}

}  // namespace weitz
