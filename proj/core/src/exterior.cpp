#include "weitz/exterior.hpp"

#include <array>
#include <bit>
#include <mutex>
#include <string>

#include "weitz/error.hpp"

namespace weitz {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidIndex: return "invalid-index";
    case ErrorCode::kInvalidRank: return "invalid-rank";
    case ErrorCode::kInvalidDegree: return "invalid-degree";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kDegeneratePlane: return "degenerate-plane";
    case ErrorCode::kFormulaRange: return "formula-range";
    case ErrorCode::kUnsupportedDimension: return "unsupported-dimension";
    case ErrorCode::kAsymmetricForm: return "asymmetric-form";
    case ErrorCode::kBianchiViolation: return "bianchi-violation";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kSchema: return "schema-error";
    case ErrorCode::kIo: return "io-error";
    case ErrorCode::kConfig: return "config-error";
  }
  return "unknown";
}

int popcount(Mask m) noexcept { return std::popcount(m); }

int count_below(Mask m, int bit) noexcept {
  return std::popcount(m & ((Mask{1} << bit) - 1));
}

int merge_sign(Mask a, Mask b) noexcept {
  // Inversions are pairs (x in a, y in b) with x > y.
  int inversions = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    const int y = std::countr_zero(rest);
    inversions += std::popcount(a >> (y + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

std::size_t binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

namespace {

// Lexicographic enumeration of k-subsets of {0..n-1} as masks.
void enumerate_subsets(int n, int k, int start, Mask prefix, std::vector<Mask>& out) {
  if (k == 0) {
    out.push_back(prefix);
    return;
  }
  for (int i = start; i <= n - k; ++i) {
    enumerate_subsets(n, k - 1, i + 1, prefix | (Mask{1} << i), out);
  }
}

}  // namespace

AlgebraContext::AlgebraContext(int n) : n_(n) {
  if (n < 1 || n > kMaxDimension) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "dimension must lie in [1, " + std::to_string(kMaxDimension) +
                    "], got " + std::to_string(n));
  }
  by_degree_.resize(static_cast<std::size_t>(n) + 1);
  rank_of_mask_.assign(std::size_t{1} << n, 0);
  for (int p = 0; p <= n; ++p) {
    auto& masks = by_degree_[p];
    masks.reserve(binomial(n, p));
    enumerate_subsets(n, p, 0, 0, masks);
    for (std::size_t r = 0; r < masks.size(); ++r) {
      rank_of_mask_[masks[r]] = static_cast<std::uint32_t>(r);
    }
  }
}

std::size_t AlgebraContext::basis_size(int p) const noexcept {
  if (p < 0 || p > n_) return 0;
  return by_degree_[p].size();
}

std::span<const Mask> AlgebraContext::basis(int p) const noexcept {
  if (p < 0 || p > n_) return {};
  return by_degree_[p];
}

const AlgebraContext& context(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "dimension must lie in [1, " + std::to_string(kMaxDimension) +
                    "], got " + std::to_string(n));
  }
  static std::array<std::once_flag, kMaxDimension + 1> flags;
  static std::array<std::optional<AlgebraContext>, kMaxDimension + 1> slots;
  std::call_once(flags[n], [n] { slots[n].emplace(n); });
  return *slots[n];
}

MultiIndex::MultiIndex(std::initializer_list<int> indices)
    : MultiIndex(std::span<const int>(indices.begin(), indices.size())) {}

MultiIndex::MultiIndex(std::span<const int> indices) {
  int previous = 0;
  for (int i : indices) {
    if (i < 1 || i > kMaxDimension) {
      throw Error(ErrorCode::kInvalidIndex, "basis index " + std::to_string(i) + " out of range");
    }
    if (i <= previous) {
      throw Error(ErrorCode::kInvalidIndex, "multi-index must be strictly increasing");
    }
    mask_ |= Mask{1} << (i - 1);
    previous = i;
  }
}

int MultiIndex::degree() const noexcept { return std::popcount(mask_); }

bool MultiIndex::contains(int i) const noexcept {
  return i >= 1 && i <= kMaxDimension && ((mask_ >> (i - 1)) & 1U);
}

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(degree()));
  for (Mask rest = mask_; rest != 0; rest &= rest - 1) out.push_back(std::countr_zero(rest) + 1);
  return out;
}

std::size_t rank_index(const MultiIndex& index, const AlgebraContext& ctx) {
  if ((index.mask() & ~ctx.full_mask()) != 0) {
    throw Error(ErrorCode::kInvalidIndex,
                "multi-index exceeds dimension " + std::to_string(ctx.dim()));
  }
  return ctx.rank_of(index.mask());
}

MultiIndex unrank_index(std::size_t rank, int degree, const AlgebraContext& ctx) {
  if (degree < 0 || degree > ctx.dim()) {
    throw Error(ErrorCode::kInvalidDegree, "degree " + std::to_string(degree) + " out of range");
  }
  if (rank >= ctx.basis_size(degree)) {
    throw Error(ErrorCode::kInvalidRank, "rank " + std::to_string(rank) + " out of range for C(" +
                                             std::to_string(ctx.dim()) + "," +
                                             std::to_string(degree) + ")");
  }
  return MultiIndex::from_mask(ctx.mask_at(degree, rank));
}

std::optional<SignedIndex> wedge_basis(const MultiIndex& a, const MultiIndex& b) {
  if ((a.mask() & b.mask()) != 0) return std::nullopt;
  return SignedIndex{merge_sign(a.mask(), b.mask()), MultiIndex::from_mask(a.mask() | b.mask())};
}

SignedIndex complement(const MultiIndex& index, const AlgebraContext& ctx) {
  if ((index.mask() & ~ctx.full_mask()) != 0) {
    throw Error(ErrorCode::kInvalidIndex,
                "multi-index exceeds dimension " + std::to_string(ctx.dim()));
  }
  const Mask rest = ctx.full_mask() & ~index.mask();
  return SignedIndex{merge_sign(index.mask(), rest), MultiIndex::from_mask(rest)};
}

}  // namespace weitz
