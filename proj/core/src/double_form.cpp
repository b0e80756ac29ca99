#include "weitz/double_form.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <mutex>
#include <optional>
#include <string>

#include "weitz/error.hpp"
#include "weitz/linalg.hpp"

namespace weitz {

namespace {

void require_same_context(const DoubleForm& a, const DoubleForm& b, const char* op) {
  if (!(a.context() == b.context())) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(op) + ": forms live in dimensions " + std::to_string(a.dim()) +
                    " and " + std::to_string(b.dim()));
  }
}

void require_same_degree(const DoubleForm& a, const DoubleForm& b, const char* op) {
  require_same_context(a, b, op);
  if (a.p() != b.p() || a.q() != b.q()) {
    throw Error(ErrorCode::kInvalidDegree, std::string(op) + ": degree mismatch (" +
                                               std::to_string(a.p()) + "," + std::to_string(a.q()) +
                                               ") vs (" + std::to_string(b.p()) + "," +
                                               std::to_string(b.q()) + ")");
  }
}

struct Split {
  std::size_t first;   // rank of the leading block
  std::size_t second;  // rank of the trailing block
  int sign;
};

// For every degree-`total` basis element, the (lead, total-lead) shuffles.
std::vector<std::vector<Split>> shuffle_splits(const AlgebraContext& ctx, int total, int lead) {
  const auto masks = ctx.basis(total);
  std::vector<std::vector<Split>> out(masks.size());
  for (std::size_t r = 0; r < masks.size(); ++r) {
    const Mask whole = masks[r];
    // Submask enumeration, including the empty submask.
    for (Mask sub = whole;; sub = (sub - 1) & whole) {
      if (popcount(sub) == lead) {
        const Mask rest = whole & ~sub;
        out[r].push_back({ctx.rank_of(sub), ctx.rank_of(rest), merge_sign(sub, rest)});
      }
      if (sub == 0) break;
    }
  }
  return out;
}

}  // namespace

DoubleForm::DoubleForm(const AlgebraContext& ctx, int p, int q)
    : ctx_(&ctx), p_(p), q_(q) {
  if (p < 0 || q < 0) {
    throw Error(ErrorCode::kInvalidDegree, "double form degrees must be non-negative");
  }
  coeffs_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ctx.basis_size(p)),
                                  static_cast<Eigen::Index>(ctx.basis_size(q)));
}

DoubleForm::DoubleForm(const AlgebraContext& ctx, int p, int q, Eigen::MatrixXd coeffs)
    : DoubleForm(ctx, p, q) {
  if (coeffs.rows() != coeffs_.rows() || coeffs.cols() != coeffs_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "coefficient matrix is " + std::to_string(coeffs.rows()) + "x" +
                    std::to_string(coeffs.cols()) + ", expected " + std::to_string(coeffs_.rows()) +
                    "x" + std::to_string(coeffs_.cols()));
  }
  coeffs_ = std::move(coeffs);
}

DoubleForm DoubleForm::scalar(const AlgebraContext& ctx, double value) {
  DoubleForm out(ctx, 0, 0);
  out.coeffs_(0, 0) = value;
  return out;
}

double DoubleForm::operator()(const MultiIndex& row, const MultiIndex& col) const {
  if (row.degree() != p_ || col.degree() != q_) {
    throw Error(ErrorCode::kInvalidDegree, "multi-index degrees do not match the form");
  }
  return coeffs_(static_cast<Eigen::Index>(rank_index(row, *ctx_)),
                 static_cast<Eigen::Index>(rank_index(col, *ctx_)));
}

double DoubleForm::at(Mask row, Mask col) const noexcept {
  if (popcount(row) != p_ || popcount(col) != q_) return 0.0;
  return coeffs_(static_cast<Eigen::Index>(ctx_->rank_of(row)),
                 static_cast<Eigen::Index>(ctx_->rank_of(col)));
}

double DoubleForm::value() const {
  if (p_ != 0 || q_ != 0) {
    throw Error(ErrorCode::kInvalidDegree, "value() requires a (0,0) form");
  }
  return coeffs_(0, 0);
}

DoubleForm DoubleForm::transpose() const {
  return DoubleForm(*ctx_, q_, p_, coeffs_.transpose());
}

bool DoubleForm::is_symmetric(double rel_tol) const noexcept {
  if (p_ != q_) return false;
  if (coeffs_.size() == 0) return true;
  const double scale = std::max(coeffs_.norm(), 1.0);
  return (coeffs_ - coeffs_.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

DoubleForm& DoubleForm::operator+=(const DoubleForm& other) {
  require_same_degree(*this, other, "operator+");
  coeffs_ += other.coeffs_;
  return *this;
}

DoubleForm& DoubleForm::operator-=(const DoubleForm& other) {
  require_same_degree(*this, other, "operator-");
  coeffs_ -= other.coeffs_;
  return *this;
}

DoubleForm& DoubleForm::operator*=(double s) noexcept {
  coeffs_ *= s;
  return *this;
}

DoubleForm kn_product(const DoubleForm& a, const DoubleForm& b) {
  require_same_context(a, b, "kn_product");
  const auto& ctx = a.context();
  const int row_deg = a.p() + b.p();
  const int col_deg = a.q() + b.q();
  DoubleForm out(ctx, row_deg, col_deg);
  if (out.coeffs().size() == 0) return out;

  // Summing over shuffles only absorbs the 1/(p!r!q!s!) prefactor.
  const auto row_splits = shuffle_splits(ctx, row_deg, a.p());
  const auto col_splits = shuffle_splits(ctx, col_deg, a.q());
  const auto& lhs = a.coeffs();
  const auto& rhs = b.coeffs();
  Eigen::MatrixXd result(out.coeffs().rows(), out.coeffs().cols());
  for (Eigen::Index i = 0; i < result.rows(); ++i) {
    for (Eigen::Index j = 0; j < result.cols(); ++j) {
      double sum = 0.0;
      for (const Split& rs : row_splits[i]) {
        for (const Split& cs : col_splits[j]) {
          sum += rs.sign * cs.sign * lhs(rs.first, cs.first) * rhs(rs.second, cs.second);
        }
      }
      result(i, j) = sum;
    }
  }
  return DoubleForm(ctx, row_deg, col_deg, std::move(result));
}

DoubleForm metric(const AlgebraContext& ctx) {
  return DoubleForm(ctx, 1, 1, Eigen::MatrixXd::Identity(ctx.dim(), ctx.dim()));
}

DoubleForm metric_power(int k, const AlgebraContext& ctx) {
  if (k < 0 || k > ctx.dim()) {
    throw Error(ErrorCode::kInvalidDegree,
                "metric power " + std::to_string(k) + " outside [0, " + std::to_string(ctx.dim()) + "]");
  }
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  const auto size = static_cast<Eigen::Index>(ctx.basis_size(k));
  return DoubleForm(ctx, k, k, factorial * Eigen::MatrixXd::Identity(size, size));
}

DoubleForm contract(const DoubleForm& form) {
  if (form.p() < 1 || form.q() < 1) {
    throw Error(ErrorCode::kInvalidDegree, "cannot contract a (" + std::to_string(form.p()) + "," +
                                               std::to_string(form.q()) + ") form");
  }
  const auto& ctx = form.context();
  DoubleForm out(ctx, form.p() - 1, form.q() - 1);
  if (out.coeffs().size() == 0 || form.coeffs().size() == 0) return out;

  const auto rows = ctx.basis(form.p() - 1);
  const auto cols = ctx.basis(form.q() - 1);
  Eigen::MatrixXd result(out.coeffs().rows(), out.coeffs().cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Mask free = ctx.full_mask() & ~(rows[i] | cols[j]);
      double sum = 0.0;
      for (Mask rest = free; rest != 0; rest &= rest - 1) {
        const Mask m = rest & (~rest + 1);
        const int sign = merge_sign(m, rows[i]) * merge_sign(m, cols[j]);
        sum += sign * form.at(rows[i] | m, cols[j] | m);
      }
      result(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }
  return DoubleForm(ctx, form.p() - 1, form.q() - 1, std::move(result));
}

DoubleForm contract(const DoubleForm& form, int k) {
  if (k < 0) throw Error(ErrorCode::kInvalidDegree, "negative contraction count");
  DoubleForm out = form;
  for (int i = 0; i < k; ++i) out = contract(out);
  return out;
}

double inner(const DoubleForm& a, const DoubleForm& b) {
  require_same_context(a, b, "inner");
  if (a.p() != b.p() || a.q() != b.q()) return 0.0;
  return a.coeffs().cwiseProduct(b.coeffs()).sum();
}

DoubleForm star(const DoubleForm& form) {
  const auto& ctx = form.context();
  const int n = ctx.dim();
  if (form.p() > n || form.q() > n) {
    throw Error(ErrorCode::kInvalidDegree, "star of a form with degree above n");
  }
  const auto rows = ctx.basis(n - form.p());
  const auto cols = ctx.basis(n - form.q());
  Eigen::MatrixXd result(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto ri = complement(MultiIndex::from_mask(rows[i]), ctx);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto cj = complement(MultiIndex::from_mask(cols[j]), ctx);
      result(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          ri.sign * cj.sign * form.at(ri.index.mask(), cj.index.mask());
    }
  }
  return DoubleForm(ctx, n - form.p(), n - form.q(), std::move(result));
}

double bianchi_residual(const DoubleForm& form) {
  if (form.q() < 1) {
    throw Error(ErrorCode::kInvalidDegree, "first Bianchi identity needs q >= 1");
  }
  const auto& ctx = form.context();
  double worst = 0.0;
  for (Mask x : ctx.basis(form.p() + 1)) {
    for (Mask y : ctx.basis(form.q() - 1)) {
      double sum = 0.0;
      int j = 0;
      for (Mask rest = x; rest != 0; rest &= rest - 1) {
        ++j;
        const Mask xj = rest & (~rest + 1);
        if (xj & y) continue;
        const double sign = ((j & 1) ? -1.0 : 1.0) * merge_sign(xj, y);
        sum += sign * form.at(x & ~xj, y | xj);
      }
      worst = std::max(worst, std::abs(sum));
    }
  }
  return worst;
}

double sectional(const DoubleForm& form, const Eigen::MatrixXd& span) {
  if (form.p() != form.q()) {
    throw Error(ErrorCode::kInvalidDegree, "sectional curvature needs a (p,p) form");
  }
  if (span.rows() != form.dim() || span.cols() != form.p()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "span must be an n x p matrix (" + std::to_string(form.dim()) + " x " +
                    std::to_string(form.p()) + ")");
  }
  const auto frame = gram_schmidt(span, 1e-10);
  if (!frame) throw Error(ErrorCode::kDegeneratePlane, "spanning vectors are linearly dependent");
  const Eigen::VectorXd v = decomposable(form.context(), *frame);
  return v.dot(form.coeffs() * v);
}

CurvatureTensor::CurvatureTensor(DoubleForm form, double bianchi_tol)
    : form_(std::move(form)), residual_(0.0) {
  if (form_.p() != 2 || form_.q() != 2) {
    throw Error(ErrorCode::kInvalidDegree, "curvature tensors are (2,2) double forms");
  }
  const Eigen::MatrixXd& m = form_.coeffs();
  const double scale = std::max(m.norm(), 1.0);
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kAsymmetricForm, "curvature tensor must be symmetric");
  }
  form_ = DoubleForm(form_.context(), 2, 2, 0.5 * (m + m.transpose()));
  residual_ = weitz::bianchi_residual(form_);
  if (residual_ > bianchi_tol * scale) {
    throw Error(ErrorCode::kBianchiViolation,
                "first Bianchi residual " + std::to_string(residual_) + " exceeds tolerance");
  }
}

namespace {

std::vector<DoubleForm> build_bianchi_basis(const AlgebraContext& ctx) {
  const int n = ctx.dim();
  const auto pairs = static_cast<Eigen::Index>(ctx.basis_size(2));
  // Orthonormal coordinates on symmetric matrices: diagonal entries as is,
  // off-diagonal pairs scaled by sqrt(2).
  Eigen::MatrixXi coord(pairs, pairs);
  Eigen::Index count = 0;
  for (Eigen::Index a = 0; a < pairs; ++a) {
    for (Eigen::Index b = a; b < pairs; ++b) coord(a, b) = coord(b, a) = static_cast<int>(count++);
  }
  if (count == 0) return {};
  const double off_weight = 1.0 / std::sqrt(2.0);

  std::vector<Eigen::VectorXd> rows;
  for (Mask x : ctx.basis(3)) {
    for (int yi = 0; yi < n; ++yi) {
      const Mask y = Mask{1} << yi;
      Eigen::VectorXd row = Eigen::VectorXd::Zero(count);
      int j = 0;
      for (Mask rest = x; rest != 0; rest &= rest - 1) {
        ++j;
        const Mask xj = rest & (~rest + 1);
        if (xj & y) continue;
        const double sign = ((j & 1) ? -1.0 : 1.0) * merge_sign(xj, y);
        const auto r = static_cast<Eigen::Index>(ctx.rank_of(x & ~xj));
        const auto c = static_cast<Eigen::Index>(ctx.rank_of(y | xj));
        row(coord(r, c)) += sign * (r == c ? 1.0 : off_weight);
      }
      if (row.squaredNorm() > 0) rows.push_back(std::move(row));
    }
  }

  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(count, count);
  for (const auto& row : rows) normal.noalias() += row * row.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normal);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double cutoff = 1e-9 * std::max(values.cwiseAbs().maxCoeff(), 1.0);

  std::vector<DoubleForm> basis;
  for (Eigen::Index k = 0; k < count; ++k) {
    if (values(k) > cutoff) continue;
    const Eigen::VectorXd v = solver.eigenvectors().col(k);
    Eigen::MatrixXd m(pairs, pairs);
    for (Eigen::Index a = 0; a < pairs; ++a) {
      for (Eigen::Index b = 0; b < pairs; ++b) m(a, b) = v(coord(a, b)) * (a == b ? 1.0 : off_weight);
    }
    basis.emplace_back(ctx, 2, 2, std::move(m));
  }
  return basis;
}

}  // namespace

const std::vector<DoubleForm>& bianchi_basis_22(const AlgebraContext& ctx) {
  static std::array<std::once_flag, kMaxDimension + 1> flags;
  static std::array<std::vector<DoubleForm>, kMaxDimension + 1> cache;
  const int n = ctx.dim();
  std::call_once(flags[n], [&ctx, n] { cache[n] = build_bianchi_basis(ctx); });
  return cache[n];
}

DoubleForm project_bianchi(const DoubleForm& form) {
  if (form.p() != 2 || form.q() != 2) {
    throw Error(ErrorCode::kInvalidDegree, "Bianchi projection acts on (2,2) forms");
  }
  DoubleForm out(form.context(), 2, 2);
  for (const auto& b : bianchi_basis_22(form.context())) out += inner(form, b) * b;
  return out;
}

}  // namespace weitz
