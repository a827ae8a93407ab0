#include <gtest/gtest.h>

#include "oracles.hpp"
#include "treeinv/closure.hpp"
#include "treeinv/error.hpp"
#include "treeinv/inversions.hpp"
#include "treeinv/search.hpp"

using namespace treeinv;

namespace {

// Every portrait of B(e,depth) that passes the local test, by exhaustion.
const std::vector<Portrait>& all_portraits_depth3() {
  static const std::vector<Portrait> all = [] {
    std::vector<Portrait> v;
    for (int edge = 0; edge < 2; ++edge) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << ball_size(2)); ++bits) {
        v.push_back(oracle::to_portrait(3, oracle::from_bits(3, edge == 1, bits)));
      }
    }
    return v;
  }();
  return all;
}

std::vector<Portrait> brute_force_compatible(const Portrait& g, int k) {
  std::vector<Portrait> out;
  for (const auto& h : all_portraits_depth3()) {
    if (is_locally_compatible(h, g, k)) out.push_back(h);
  }
  std::sort(out.begin(), out.end(), [](const Portrait& a, const Portrait& b) {
    return std::lexicographical_compare(a.images().begin(), a.images().end(), b.images().begin(), b.images().end());
  });
  return out;
}

SearchOptions keep_all() {
  SearchOptions o;
  o.max_stored = 1'000'000;
  return o;
}

std::vector<Portrait> sorted(std::vector<Portrait> v) {
  std::sort(v.begin(), v.end(), [](const Portrait& a, const Portrait& b) {
    return std::lexicographical_compare(a.images().begin(), a.images().end(), b.images().begin(), b.images().end());
  });
  return v;
}

}  // namespace

TEST(Search, MatchesExhaustiveEnumerationAtDepthThree) {
  for (const Portrait& g : {good_inversion(3), truncated_good_inversion(1, 3), truncated_good_inversion(2, 3)}) {
    for (int k = 1; k <= 2; ++k) {
      const auto ref = brute_force_compatible(g, k);
      const auto r = enumerate_compatible(g, k, 3, predicates::any(), keep_all());
      EXPECT_TRUE(r.exhaustive);
      EXPECT_EQ(r.found_count, ref.size());
      EXPECT_EQ(sorted(r.found), ref);
    }
  }
}

TEST(Search, GoodInversionShadowSizes) {
  const Portrait g = good_inversion(4);
  const auto r3 = enumerate_compatible(truncate(g, 3), 2, 3, predicates::inverts_edge());
  EXPECT_EQ(r3.found_count, 128U);
  const auto r4 = enumerate_compatible(g, 2, 4, predicates::inverts_edge());
  EXPECT_EQ(r4.found_count, 32768U);
  EXPECT_TRUE(r4.exhaustive);
}

TEST(Search, FoundPortraitsPassTheLocalTest) {
  const Portrait g = truncated_good_inversion(2, 4);
  const auto r = enumerate_compatible(g, 2, 4, predicates::any());
  ASSERT_TRUE(r.exhaustive);
  ASSERT_FALSE(r.found.empty());
  for (const auto& h : r.found) EXPECT_TRUE(is_locally_compatible(h, g, 2));
}

TEST(Search, LiteralInvolutionsAreTheLastLevelKernel) {
  for (int depth = 3; depth <= 5; ++depth) {
    const Portrait g = good_inversion(depth);
    const auto r = search_involutions(g, 2, depth, keep_all());
    ASSERT_TRUE(r.exhaustive);
    EXPECT_EQ(r.found_count, (std::uint64_t{1} << (std::uint64_t{1} << (depth - 1))) - 1) << "D=" << depth;
    for (const auto& h : r.found) {
      EXPECT_EQ(truncate(h, depth - 1), Portrait::identity(depth - 1));
      EXPECT_EQ(order_on_ball(h, depth), 2U);
    }
    EXPECT_TRUE(std::find(r.found.begin(), r.found.end(), power(g, std::int64_t{1} << depth)) != r.found.end());
  }
}

TEST(Search, NoVisibleInvolutions) {
  for (int depth = 3; depth <= 5; ++depth) {
    const auto r = search_visible_involutions(good_inversion(depth), 2, depth);
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.found_count, 0U);
  }
}

TEST(Search, IdenticalAcrossThreadCounts) {
  const Portrait g = truncated_good_inversion(2, 4);
  SearchOptions one = keep_all();
  SearchOptions four = keep_all();
  four.threads = 4;
  const auto a = enumerate_compatible(g, 2, 4, predicates::inverts_edge(), one);
  const auto b = enumerate_compatible(g, 2, 4, predicates::inverts_edge(), four);
  EXPECT_EQ(a.found, b.found);
  EXPECT_EQ(a.expanded, b.expanded);

  one.budget = four.budget = 5000;
  const Portrait g5 = truncated_good_inversion(2, 5);
  const auto c = enumerate_compatible(g5, 2, 5, predicates::any(), one);
  const auto d = enumerate_compatible(g5, 2, 5, predicates::any(), four);
  EXPECT_TRUE(c.budget_exhausted);
  EXPECT_FALSE(c.exhaustive);
  EXPECT_EQ(c.expanded, 5000U);
  EXPECT_EQ(c.found, d.found);
  EXPECT_EQ(c.expanded, d.expanded);
}

TEST(Search, StoredPortraitsAreCapped) {
  SearchOptions o;
  o.max_stored = 10;
  const auto r = enumerate_compatible(good_inversion(4), 2, 4, predicates::inverts_edge(), o);
  EXPECT_EQ(r.found.size(), 10U);
  EXPECT_EQ(r.found_count, 32768U);
}

TEST(Search, ParameterChecks) {
  for (auto [k, depth] : {std::pair{0, 3}, {3, 3}, {2, 5}}) {
    try {
      enumerate_compatible(good_inversion(4), k, depth, predicates::any());
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::BadParams);
    }
  }
}

TEST(MinOrder, TruncatedInversionsReachTwoToTheN) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = min_inversion_order(truncated_good_inversion(n, n + 2), 2, n + 2);
    EXPECT_EQ(r.order, std::uint64_t{1} << n) << "N=" << n;
    EXPECT_TRUE(r.lower_bound_exhaustive);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(order_on_ball(*r.witness, n + 2), r.order);
    EXPECT_TRUE(r.witness->inverts_edge());
    EXPECT_TRUE(is_locally_compatible(*r.witness, truncated_good_inversion(n, n + 2), 2));
  }
}

TEST(MinOrder, GoodInversionSaturates) {
  const auto r = min_inversion_order(good_inversion(4), 2, 4);
  EXPECT_EQ(r.order, 32U);
  EXPECT_TRUE(r.saturated);
}

TEST(MinOrder, BudgetGivesALowerBound) {
  SearchOptions o;
  o.budget = 200'000;
  const auto r = min_inversion_order(good_inversion(5), 2, 5, o);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_EQ(r.order, 0U);
  EXPECT_GE(r.lower_bound, 2U);
  EXPECT_EQ(r.expanded, 200'000U);
}

TEST(MinOrder, RejectsEdgeFixingInput) {
  try {
    min_inversion_order(Portrait::identity(3), 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAnInversion);
  }
}
