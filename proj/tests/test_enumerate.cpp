#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "oracles.hpp"
#include "teapot/enumerate.hpp"

using namespace teapot;

namespace {
std::set<std::string> brute_periodic(std::size_t n_max) {
  std::set<std::string> out;
  for (std::size_t n = 2; n <= n_max; ++n)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      auto s = oracle::bits(v, n);
      if (oracle::primitive(s) && oracle::admissible(s)) out.insert(s);
    }
  return out;
}

std::set<std::string> brute_preperiodic(std::size_t total_max) {
  std::set<std::string> out;
  for (std::size_t n = 2; n <= total_max; ++n)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      auto s = oracle::bits(v, n);
      for (std::size_t k = 1; k < n; ++k) {
        std::string pre = s.substr(0, k), per = s.substr(k);
        if (pre.back() == per.back() || !oracle::primitive(per)) continue;
        if (oracle::admissible(pre, per)) out.insert(pre + "(" + per + ")");
      }
    }
  return out;
}
}  // namespace

TEST(Enumerate, MatchesBruteForce) {
  auto expect = brute_periodic(16);
  auto res = dataset::enumerate_admissible(16);
  std::set<std::string> got;
  for (auto id : res.ids) got.insert(Word::from_id(id).letters());
  EXPECT_EQ(got.size(), res.ids.size());
  EXPECT_EQ(got, expect);
  EXPECT_EQ(res.stats.total_admissible(), 8798u);
}

TEST(Enumerate, CountsByLength) {
  auto st = dataset::count_admissible(14);
  std::vector<std::uint64_t> expect{0, 0, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335, 630, 1161};
  EXPECT_EQ(st.admissible_by_length, expect);
  auto full = dataset::enumerate_admissible(14);
  EXPECT_EQ(full.stats.admissible_by_length, expect);
}

TEST(Enumerate, EveryWordStartsWithTen) {
  for (auto id : dataset::enumerate_admissible(12).ids) {
    Word w = Word::from_id(id);
    ASSERT_EQ(w[0], 1);
    ASSERT_EQ(w[1], 0);
  }
}

TEST(Enumerate, DominantCountsMatchPredicate) {
  auto res = dataset::enumerate_admissible(12);
  std::vector<std::uint64_t> dom(13, 0);
  for (auto id : res.ids) {
    auto s = Word::from_id(id).letters();
    if (oracle::dominant_by_suffix(s)) ++dom[s.size()];
  }
  EXPECT_EQ(res.stats.dominant_by_length, dom);
}

TEST(Enumerate, DeterministicAcrossThreadCounts) {
  dataset::EnumOptions one, many;
  many.threads = 4;
  many.split_depth = 6;
  auto a = dataset::enumerate_admissible(18, one), b = dataset::enumerate_admissible(18, many);
  EXPECT_EQ(a.ids, b.ids);
  EXPECT_EQ(a.stats.admissible_by_length, b.stats.admissible_by_length);
  EXPECT_EQ(dataset::count_admissible(18, many).admissible_by_length, a.stats.admissible_by_length);
}

TEST(Enumerate, MonotoneCumulativeCounts) {
  auto st = dataset::count_admissible(20);
  EXPECT_EQ(st.total_admissible(), 111011u);
  for (std::size_t n = 3; n <= 20; ++n) EXPECT_LE(st.admissible_by_length[n - 1], st.admissible_by_length[n]);
}

TEST(Enumerate, LengthLimit) { EXPECT_THROW(dataset::enumerate_admissible(56), DomainError); }

TEST(EnumeratePreperiodic, MatchesBruteForce) {
  auto expect = brute_preperiodic(12);
  auto res = dataset::enumerate_preperiodic(12);
  std::set<std::string> got;
  for (auto id : res.ids) got.insert(Word::from_id(id).to_string());
  EXPECT_EQ(got.size(), res.ids.size());
  EXPECT_EQ(got, expect);
}

TEST(EnumeratePreperiodic, ContainsTheWitness) {
  auto res = dataset::enumerate_preperiodic(14);
  auto id = Word::parse("10000111(001010)").id();
  EXPECT_TRUE(std::binary_search(res.ids.begin(), res.ids.end(), id));
}

TEST(Enumerate, LongCountWhenRequested) {
  if (!std::getenv("TEAPOT_LONG_TESTS")) GTEST_SKIP() << "set TEAPOT_LONG_TESTS=1 to run";
  dataset::EnumOptions opt;
  opt.threads = default_threads();
  auto st = dataset::count_admissible(29, opt);
  EXPECT_EQ(st.total_admissible(), 38458182u);
}
