#include <boxlogic/point_set.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <unordered_set>

using boxlogic::PointSet;

namespace {

PointSet random_set(std::mt19937_64& rng, std::size_t size) {
  PointSet s(size);
  for (std::size_t i = 0; i < size; ++i)
    if (rng() & 1) s.set(i);
  return s;
}

}  // namespace

TEST(PointSet, BasicMembership) {
  PointSet s(70);
  EXPECT_TRUE(s.none());
  s.set(0);
  s.set(64);
  s.set(69);
  EXPECT_EQ(s.count(), 3u);
  EXPECT_TRUE(s.test(64));
  EXPECT_FALSE(s.test(63));
  EXPECT_EQ(s.lowest(), 0u);
  EXPECT_EQ(s.next(0), 64u);
  EXPECT_EQ(s.next(69), PointSet::npos);
  EXPECT_EQ(s.members(), (std::vector<std::size_t>{0, 64, 69}));
  s.reset(0);
  EXPECT_EQ(s.lowest(), 64u);
}

TEST(PointSet, FullAndComplementKeepTailClear) {
  const PointSet full = PointSet::full(70);
  EXPECT_EQ(full.count(), 70u);
  EXPECT_TRUE(full.all());
  EXPECT_TRUE(full.complement().none());
  EXPECT_EQ(PointSet(70).complement(), full);
}

TEST(PointSet, HexRoundTrip) {
  PointSet s(16);
  s.set(0);
  s.set(15);
  EXPECT_EQ(s.to_hex(), "8001");
  EXPECT_EQ(PointSet::from_hex("8001", 16), s);
  EXPECT_EQ(PointSet::from_hex("0x8001", 16), s);
  EXPECT_EQ(PointSet(81).to_hex().size(), 21u);
}

TEST(PointSet, SetAlgebraProperties) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 150;
    const PointSet a = random_set(rng, n);
    const PointSet b = random_set(rng, n);
    EXPECT_EQ((a | b).complement(), a.complement() & b.complement());
    EXPECT_EQ(a - b, a & b.complement());
    EXPECT_EQ(a.complement().complement(), a);
    EXPECT_EQ((a & b).is_subset_of(a), true);
    EXPECT_EQ(a.disjoint(b), (a & b).none());
    EXPECT_EQ((a ^ b).count(), a.count() + b.count() - 2 * (a & b).count());
    EXPECT_EQ(PointSet::from_hex(a.to_hex(), n), a);
    if (a == b) EXPECT_EQ(a.hash(), b.hash());
  }
}

TEST(PointSet, CanonicalOrderIsPopcountFirst) {
  std::mt19937_64 rng(11);
  std::vector<PointSet> sets;
  for (int i = 0; i < 100; ++i) sets.push_back(random_set(rng, 12));
  std::sort(sets.begin(), sets.end(), boxlogic::canonical_less);
  for (std::size_t i = 1; i < sets.size(); ++i) {
    EXPECT_LE(sets[i - 1].count(), sets[i].count());
    EXPECT_FALSE(boxlogic::canonical_less(sets[i], sets[i - 1]));
  }
}

TEST(PointSet, HashSpreadsSingletons) {
  std::unordered_set<std::size_t> hashes;
  for (std::size_t i = 0; i < 200; ++i) {
    PointSet s(200);
    s.set(i);
    hashes.insert(s.hash());
  }
  EXPECT_EQ(hashes.size(), 200u);
}
