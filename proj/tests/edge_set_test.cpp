#include <gtest/gtest.h>

#include "msp/edge_set.hpp"

using msp::EdgeId;
using msp::EdgeSet;

TEST(EdgeSet, StartsEmpty) {
  EdgeSet s(130);
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.count(), 0u);
  EXPECT_EQ(s.universe(), 130u);
}

TEST(EdgeSet, FullHasExactlyUniverseBits) {
  for (std::size_t n : {0u, 1u, 63u, 64u, 65u, 128u, 200u}) {
    const auto s = EdgeSet::full(n);
    EXPECT_EQ(s.count(), n) << n;
  }
}

TEST(EdgeSet, InsertEraseContains) {
  EdgeSet s(100);
  s.insert(EdgeId{0});
  s.insert(EdgeId{64});
  s.insert(EdgeId{99});
  EXPECT_TRUE(s.contains(EdgeId{64}));
  EXPECT_FALSE(s.contains(EdgeId{63}));
  s.erase(EdgeId{64});
  EXPECT_FALSE(s.contains(EdgeId{64}));
  EXPECT_EQ(s.count(), 2u);
}

TEST(EdgeSet, SetAlgebra) {
  const auto a = EdgeSet::from_ids(70, {EdgeId{1}, EdgeId{2}, EdgeId{65}});
  const auto b = EdgeSet::from_ids(70, {EdgeId{2}, EdgeId{65}, EdgeId{66}});
  EXPECT_EQ((a | b).count(), 4u);
  EXPECT_EQ((a & b).to_vector(), (std::vector<EdgeId>{EdgeId{2}, EdgeId{65}}));
  EXPECT_EQ((a - b).to_vector(), (std::vector<EdgeId>{EdgeId{1}}));
  EXPECT_TRUE((a & b).is_subset_of(a));
  EXPECT_FALSE(a.is_subset_of(b));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_FALSE((a - b).intersects(b));
}

TEST(EdgeSet, ForEachInWindowIsAscendingAndBounded) {
  const auto s = EdgeSet::from_ids(200, {EdgeId{3}, EdgeId{64}, EdgeId{100}, EdgeId{150}, EdgeId{199}});
  std::vector<std::uint32_t> seen;
  s.for_each_in(64, 151, [&](EdgeId e) { seen.push_back(e.value); });
  EXPECT_EQ(seen, (std::vector<std::uint32_t>{64, 100, 150}));
}

TEST(EdgeSet, EqualityIgnoresInsertionOrder) {
  const auto a = EdgeSet::from_ids(10, {EdgeId{5}, EdgeId{1}});
  const auto b = EdgeSet::from_ids(10, {EdgeId{1}, EdgeId{5}});
  EXPECT_EQ(a, b);
}
