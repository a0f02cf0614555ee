#include <gtest/gtest.h>

#include "cvgme/partitions.hpp"
#include "test_util.hpp"

using namespace cvgme;

TEST(Partitions, CanonicalOrder) {
  std::vector<std::string> l3, l4;
  for (const auto& p : enumerate_bipartitions(3)) l3.push_back(p.label());
  for (const auto& p : enumerate_bipartitions(4)) l4.push_back(p.label());
  EXPECT_EQ(l3, (std::vector<std::string>{"A|BC", "B|AC", "C|AB"}));
  EXPECT_EQ(l4, (std::vector<std::string>{"A|BCD", "B|ACD", "C|ABD", "D|ABC", "AB|CD", "AC|BD",
                                          "AD|BC"}));
}

TEST(Partitions, CountAndUniqueness) {
  for (int n = 2; n <= 7; ++n) {
    const auto parts = enumerate_bipartitions(n);
    EXPECT_EQ(static_cast<int>(parts.size()), (1 << (n - 1)) - 1);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        // no split appears twice, even with sides swapped
        EXPECT_FALSE(parts[i] == parts[j]);
        EXPECT_NE(parts[i].label(), parts[j].label());
      }
  }
  EXPECT_THROW(enumerate_bipartitions(1), std::invalid_argument);
}

TEST(Partitions, BadBipartitions) {
  EXPECT_THROW(Bipartition(3, {}), std::invalid_argument);
  EXPECT_THROW(Bipartition(3, {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Bipartition(3, {3}), std::invalid_argument);
  const Bipartition p(4, {1, 2});
  EXPECT_TRUE(p.same_side(1, 2));
  EXPECT_TRUE(p.same_side(0, 3));
  EXPECT_FALSE(p.same_side(0, 1));
}

TEST(Partitions, TreeValidation) {
  EXPECT_TRUE(validate_tree(tree_preset("chain3")).valid);
  EXPECT_TRUE(validate_tree(tree_preset("chain4")).valid);
  EXPECT_TRUE(validate_tree(tree_preset("tshape4")).valid);
  EXPECT_FALSE(validate_tree({3, {{0, 1}, {1, 2}, {0, 2}}}).valid);   // cycle
  EXPECT_FALSE(validate_tree({4, {{0, 1}, {2, 3}}}).valid);           // disconnected
  EXPECT_FALSE(validate_tree({3, {{0, 0}, {1, 2}}}).valid);           // self loop
  EXPECT_FALSE(validate_tree({3, {{0, 1}, {1, 5}}}).valid);           // range
  EXPECT_THROW(tree_preset("ring5"), std::invalid_argument);
}

TEST(Partitions, BlindPattern) {
  using V = std::vector<ModePair>;
  EXPECT_EQ(blind_pattern(tree_preset("chain3")), (V{{0, 2}}));
  EXPECT_EQ(blind_pattern(tree_preset("chain4")), (V{{0, 2}, {0, 3}, {1, 3}}));
  EXPECT_EQ(blind_pattern(tree_preset("tshape4")), (V{{0, 2}, {0, 3}, {2, 3}}));
  // edges + blind pairs = all pairs
  for (int n = 3; n <= 6; ++n) {
    TreeSpec star{n, {}};
    for (int j = 1; j < n; ++j) star.edges.push_back({0, j});
    EXPECT_EQ(static_cast<int>(blind_pattern(star).size()), n * (n - 1) / 2 - (n - 1));
  }
}

TEST(Partitions, BlockProjectIdempotentSelfAdjoint) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int n = 2; n <= 5; ++n)
    for (const auto& pi : enumerate_bipartitions(n)) {
      const Matrix a = Matrix::NullaryExpr(2 * n, 2 * n, [&](Eigen::Index, Eigen::Index) { return nd(rng); });
      const Matrix b = Matrix::NullaryExpr(2 * n, 2 * n, [&](Eigen::Index, Eigen::Index) { return nd(rng); });
      const Matrix pa = block_project(a, pi);
      EXPECT_EQ(testutil::max_abs(block_project(pa, pi) - pa), 0.0);
      EXPECT_NEAR((pa.transpose() * b).trace(), (a.transpose() * block_project(b, pi)).trace(), 1e-10);
      // cross-side blocks vanish, same-side blocks untouched
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Matrix blk = pa.block(2 * i, 2 * j, 2, 2);
          if (pi.same_side(i, j)) EXPECT_EQ(testutil::max_abs(blk - a.block(2 * i, 2 * j, 2, 2)), 0.0);
          else EXPECT_EQ(testutil::max_abs(blk), 0.0);
        }
    }
}

TEST(Partitions, Labels) {
  EXPECT_EQ(mode_label(0), "A");
  EXPECT_EQ(mode_label(3), "D");
  EXPECT_EQ(make_pair_sorted(3, 1), (ModePair{1, 3}));
}
