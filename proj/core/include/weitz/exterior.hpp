#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace weitz {

inline constexpr int kMaxDimension = 12;

// Subset of {1..n} stored as a bitmask; bit (i-1) set means index i present.
using Mask = std::uint32_t;

/// Basis tables for Λ^p V, 0 <= p <= n, with V Euclidean of dimension n.
///
/// Instances are immutable and shared: obtain them with `context(n)`.
/// Every multi-index of degree p has a lexicographic rank in [0, C(n,p)).
class AlgebraContext {
 public:
  explicit AlgebraContext(int n);

  int dim() const noexcept { return n_; }

  /// C(n,p); zero when p < 0 or p > n.
  std::size_t basis_size(int p) const noexcept;

  /// Masks of all degree-p subsets in lexicographic order (empty for p > n).
  std::span<const Mask> basis(int p) const noexcept;

  Mask mask_at(int p, std::size_t rank) const { return by_degree_[p][rank]; }

  /// Rank of a subset within its degree. Undefined for masks outside {1..n}.
  std::size_t rank_of(Mask m) const noexcept { return rank_of_mask_[m]; }

  Mask full_mask() const noexcept { return (Mask{1} << n_) - 1; }

  friend bool operator==(const AlgebraContext& a, const AlgebraContext& b) noexcept {
    return a.n_ == b.n_;
  }

 private:
  int n_;
  std::vector<std::vector<Mask>> by_degree_;
  std::vector<std::uint32_t> rank_of_mask_;
};

/// Shared context for dimension n (1 <= n <= kMaxDimension).
const AlgebraContext& context(int n);

/// Strictly increasing tuple of 1-based basis indices.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> indices);
  explicit MultiIndex(std::span<const int> indices);

  static MultiIndex from_mask(Mask m) noexcept {
    MultiIndex out;
    out.mask_ = m;
    return out;
  }

  Mask mask() const noexcept { return mask_; }
  int degree() const noexcept;
  bool contains(int i) const noexcept;
  std::vector<int> indices() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  Mask mask_ = 0;
};

std::size_t rank_index(const MultiIndex& index, const AlgebraContext& ctx);
MultiIndex unrank_index(std::size_t rank, int degree, const AlgebraContext& ctx);

struct SignedIndex {
  int sign;
  MultiIndex index;

  friend bool operator==(const SignedIndex&, const SignedIndex&) = default;
};

/// e_I ∧ e_J = sign · e_K, or nullopt when I and J overlap.
std::optional<SignedIndex> wedge_basis(const MultiIndex& a, const MultiIndex& b);

/// Hodge complement: ∗e_I = sign · e_{I^c} for the orientation e_1∧…∧e_n.
SignedIndex complement(const MultiIndex& index, const AlgebraContext& ctx);

// Mask-level helpers used by the dense kernels.

int popcount(Mask m) noexcept;

/// Sign of the permutation sorting the concatenation (a ascending, b ascending).
/// Requires a & b == 0.
int merge_sign(Mask a, Mask b) noexcept;

/// Number of elements of `m` strictly below bit position `bit`.
int count_below(Mask m, int bit) noexcept;

/// Binomial coefficient C(n,k) for small arguments; zero outside 0 <= k <= n.
std::size_t binomial(int n, int k) noexcept;

}  // namespace weitz
