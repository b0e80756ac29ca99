#include "weitz/random.hpp"

#include "weitz/error.hpp"
#include "weitz/linalg.hpp"
#include "weitz/weitzenboeck.hpp"

namespace weitz {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t part : parts) h = splitmix64(h ^ splitmix64(part));
  return h;
}

Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd out(rows, cols);
  // Column-major fill order keeps samples stable across Eigen versions.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  return out;
}

Eigen::MatrixXd sample_plane(int n, int p, Rng& rng) {
  for (;;) {
    if (auto q = gram_schmidt(gaussian_matrix(rng, n, p), 1e-8)) return *q;
  }
}

Eigen::MatrixXd extend_to_frame(const Eigen::MatrixXd& plane, Rng& rng) {
  const Eigen::Index n = plane.rows();
  const Eigen::Index p = plane.cols();
  for (;;) {
    Eigen::MatrixXd candidate(n, n);
    candidate << plane, gaussian_matrix(rng, n, n - p);
    if (auto q = gram_schmidt(candidate, 1e-8)) {
      // Re-pin the leading columns; Gram–Schmidt leaves orthonormal input unchanged up to roundoff.
      q->leftCols(p) = plane;
      return *q;
    }
  }
}

DoubleForm random_form(std::uint64_t seed, const AlgebraContext& ctx, int p, int q) {
  Rng rng(seed);
  DoubleForm shape(ctx, p, q);
  return DoubleForm(ctx, p, q, gaussian_matrix(rng, shape.coeffs().rows(), shape.coeffs().cols()));
}

DoubleForm random_symmetric_11(std::uint64_t seed, const AlgebraContext& ctx) {
  Rng rng(seed);
  const Eigen::MatrixXd a = gaussian_matrix(rng, ctx.dim(), ctx.dim());
  return DoubleForm(ctx, 1, 1, 0.5 * (a + a.transpose()));
}

CurvatureTensor random_bianchi_22(std::uint64_t seed, std::optional<int> terms, const AlgebraContext& ctx) {
  const int n = ctx.dim();
  const int count = terms.value_or(n * (n + 1) / 2 + 2);
  if (count < 1) throw Error(ErrorCode::kConfig, "random_bianchi_22 needs at least one term");
  DoubleForm sum(ctx, 2, 2);
  for (int a = 0; a < count; ++a) {
    const DoubleForm h = random_symmetric_11(mix_seed(seed, {static_cast<std::uint64_t>(a)}), ctx);
    sum += kn_product(h, h);
  }
  return CurvatureTensor(std::move(sum));
}

CurvatureTensor constant_curvature(double kappa, const AlgebraContext& ctx) {
  return CurvatureTensor(0.5 * kappa * metric_power(2, ctx));
}

CurvatureTensor random_conformally_flat(std::uint64_t seed, const AlgebraContext& ctx) {
  const DoubleForm h = random_symmetric_11(mix_seed(seed, {1}), ctx);
  Rng rng(mix_seed(seed, {2}));
  const double mu = std::normal_distribution<double>(0.0, 1.0)(rng);
  return CurvatureTensor(kn_product(metric(ctx), h) + mu * metric_power(2, ctx));
}

CurvatureTensor random_pure_weyl(std::uint64_t seed, const AlgebraContext& ctx) {
  return CurvatureTensor(decompose_22(random_bianchi_22(seed, std::nullopt, ctx)).weyl);
}

CurvatureTensor perturbed_constant_curvature(std::uint64_t seed, double epsilon, const AlgebraContext& ctx) {
  const CurvatureTensor r = random_bianchi_22(seed, std::nullopt, ctx);
  return CurvatureTensor(0.5 * metric_power(2, ctx) + (epsilon / r.form().norm()) * r.form());
}

}  // namespace weitz
