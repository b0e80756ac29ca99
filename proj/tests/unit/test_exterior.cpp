#include <gtest/gtest.h>

#include "oracles.hpp"
#include "weitz/error.hpp"
#include "weitz/exterior.hpp"

using namespace weitz;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no weitz::Error thrown";
  return ErrorCode::kConfig;
}

}  // namespace

TEST(Rank, Examples) {
  EXPECT_EQ(rank_index({1, 2}, context(4)), 0u);
  EXPECT_EQ(rank_index({3, 4}, context(4)), 5u);
  EXPECT_EQ(rank_index({1}, context(1)), 0u);
}

TEST(Rank, UnrankExamples) {
  EXPECT_EQ(unrank_index(0, 2, context(4)), MultiIndex({1, 2}));
  EXPECT_EQ(unrank_index(5, 2, context(4)), MultiIndex({3, 4}));
  EXPECT_EQ(unrank_index(0, 0, context(3)), MultiIndex{});
  EXPECT_EQ(unrank_index(0, 0, context(3)).degree(), 0);
}

TEST(Rank, Errors) {
  EXPECT_EQ(code_of([] { rank_index({1, 5}, context(4)); }), ErrorCode::kInvalidIndex);
  EXPECT_EQ(code_of([] { rank_index({1, 2, 3}, context(2)); }), ErrorCode::kInvalidIndex);
  EXPECT_EQ(code_of([] { unrank_index(6, 2, context(4)); }), ErrorCode::kInvalidRank);
  EXPECT_EQ(code_of([] { unrank_index(0, 5, context(4)); }), ErrorCode::kInvalidDegree);
  EXPECT_EQ(code_of([] { MultiIndex({2, 1}); }), ErrorCode::kInvalidIndex);
  EXPECT_EQ(code_of([] { MultiIndex({0}); }), ErrorCode::kInvalidIndex);
  EXPECT_EQ(code_of([] { context(13); }), ErrorCode::kUnsupportedDimension);
}

TEST(Rank, MatchesEnumerationExhaustively) {
  for (int n = 1; n <= 8; ++n) {
    const auto& ctx = context(n);
    for (int p = 0; p <= n; ++p) {
      const auto all = oracle::subsets(n, p);
      ASSERT_EQ(ctx.basis_size(p), all.size());
      for (std::size_t r = 0; r < all.size(); ++r) {
        const MultiIndex index{std::span<const int>(all[r])};
        EXPECT_EQ(rank_index(index, ctx), r);
        EXPECT_EQ(unrank_index(r, p, ctx), index);
        EXPECT_EQ(unrank_index(r, p, ctx).indices(), all[r]);
      }
    }
  }
}

TEST(Wedge, Examples) {
  EXPECT_EQ(wedge_basis({1}, {2}), (SignedIndex{1, {1, 2}}));
  EXPECT_EQ(wedge_basis({2}, {1}), (SignedIndex{-1, {1, 2}}));
  EXPECT_EQ(wedge_basis({1, 3}, {2}), (SignedIndex{-1, {1, 2, 3}}));
  EXPECT_FALSE(wedge_basis({1, 2}, {2, 3}).has_value());
}

TEST(Wedge, SignMatchesPermutationParity) {
  const int n = 6;
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; p + q <= n; ++q) {
      for (const auto& a : oracle::subsets(n, p)) {
        for (const auto& b : oracle::subsets(n, q)) {
          const auto w = wedge_basis(MultiIndex(std::span<const int>(a)), MultiIndex(std::span<const int>(b)));
          auto joined = a;
          joined.insert(joined.end(), b.begin(), b.end());
          auto sorted = joined;
          std::sort(sorted.begin(), sorted.end());
          if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            EXPECT_FALSE(w.has_value());
            continue;
          }
          ASSERT_TRUE(w.has_value());
          EXPECT_EQ(w->sign, oracle::permutation_sign(joined));
          EXPECT_EQ(w->index.indices(), sorted);
        }
      }
    }
  }
}

TEST(Wedge, GradedAntisymmetry) {
  const int n = 7;
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; p + q <= n; ++q) {
      for (Mask a : context(n).basis(p)) {
        for (Mask b : context(n).basis(q)) {
          const auto ab = wedge_basis(MultiIndex::from_mask(a), MultiIndex::from_mask(b));
          const auto ba = wedge_basis(MultiIndex::from_mask(b), MultiIndex::from_mask(a));
          ASSERT_EQ(ab.has_value(), ba.has_value());
          if (!ab) continue;
          EXPECT_EQ(ab->index, ba->index);
          EXPECT_EQ(ab->sign, ((p * q) % 2 ? -1 : 1) * ba->sign);
        }
      }
    }
  }
}

TEST(Complement, Examples) {
  EXPECT_EQ(complement({1, 2}, context(4)), (SignedIndex{1, {3, 4}}));
  EXPECT_EQ(complement({2}, context(2)), (SignedIndex{-1, {1}}));
  EXPECT_EQ(complement({}, context(3)), (SignedIndex{1, {1, 2, 3}}));
}

TEST(Complement, WedgesToVolumeAndDoubleComplementSign) {
  for (int n = 1; n <= 8; ++n) {
    const auto& ctx = context(n);
    const auto full = MultiIndex::from_mask(ctx.full_mask());
    for (int p = 0; p <= n; ++p) {
      for (Mask m : ctx.basis(p)) {
        const auto index = MultiIndex::from_mask(m);
        const auto c = complement(index, ctx);
        const auto w = wedge_basis(index, c.index);
        ASSERT_TRUE(w.has_value());
        EXPECT_EQ(*w, (SignedIndex{c.sign, full}));
        const auto cc = complement(c.index, ctx);
        EXPECT_EQ(cc.index, index);
        EXPECT_EQ(c.sign * cc.sign, (p * (n - p)) % 2 ? -1 : 1);
      }
    }
  }
}

TEST(Helpers, MaskArithmetic) {
  EXPECT_EQ(popcount(0b1011), 3);
  EXPECT_EQ(count_below(0b1011, 3), 2);
  EXPECT_EQ(merge_sign(0b0100, 0b0011), 1);   // (3)(1,2): two transpositions
  EXPECT_EQ(merge_sign(0b0010, 0b0001), -1);
  EXPECT_EQ(binomial(8, 4), 70u);
  EXPECT_EQ(binomial(4, 5), 0u);
  EXPECT_EQ(context(5).basis_size(-1), 0u);
  EXPECT_EQ(context(5).basis_size(6), 0u);
}

TEST(Context, SharedPerDimension) {
  EXPECT_EQ(&context(5), &context(5));
  EXPECT_TRUE(context(5) == context(5));
  EXPECT_FALSE(context(5) == context(6));
}
