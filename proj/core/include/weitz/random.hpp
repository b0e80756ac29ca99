#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>

#include "weitz/double_form.hpp"

namespace weitz {

using Rng = std::mt19937_64;

/// Derives a well-mixed seed from a base seed and cell coordinates.
std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept;

Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Orthonormal n x p matrix spanning a random p-plane; resamples when the
/// Gram–Schmidt pivot drops below 1e-8.
Eigen::MatrixXd sample_plane(int n, int p, Rng& rng);

/// Orthonormal n x n frame whose first columns span `plane` (n x p, orthonormal).
Eigen::MatrixXd extend_to_frame(const Eigen::MatrixXd& plane, Rng& rng);

/// Gaussian entries, no symmetry.
DoubleForm random_form(std::uint64_t seed, const AlgebraContext& ctx, int p, int q);

/// Gaussian (1,1) form, symmetrized exactly.
DoubleForm random_symmetric_11(std::uint64_t seed, const AlgebraContext& ctx);

/// Σ_a h_a·h_a with random symmetric (1,1) forms h_a. `terms` defaults to
/// n(n+1)/2 + 2 so that generic samples carry a full Weyl part.
CurvatureTensor random_bianchi_22(std::uint64_t seed, std::optional<int> terms, const AlgebraContext& ctx);

/// κ·g²/2: constant sectional curvature κ.
CurvatureTensor constant_curvature(double kappa, const AlgebraContext& ctx);

/// g·h + μ·g² for random symmetric h and scalar μ; its Weyl part vanishes.
CurvatureTensor random_conformally_flat(std::uint64_t seed, const AlgebraContext& ctx);

/// Weyl part of a random Bianchi tensor (contraction zero). Requires n >= 4.
CurvatureTensor random_pure_weyl(std::uint64_t seed, const AlgebraContext& ctx);

/// g²/2 + ε·R/‖R‖ with R a random Bianchi tensor. For ε < 1 the curvature
/// operator on Λ² stays positive definite.
CurvatureTensor perturbed_constant_curvature(std::uint64_t seed, double epsilon, const AlgebraContext& ctx);

}  // namespace weitz
