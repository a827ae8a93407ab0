#include <gtest/gtest.h>

#include "oracles.hpp"
#include "treeinv/error.hpp"
#include "treeinv/tree.hpp"

using namespace treeinv;

TEST(Address, ParseAndPrintRoundTrip) {
  for (const char* text : {"L:", "R:", "L:0110", "R:1", "R:0000000"}) {
    EXPECT_EQ(Address::parse(text).str(), text);
  }
  const Address a = Address::parse("L:0110");
  EXPECT_EQ(a.side(), Side::L);
  EXPECT_EQ(a.level(), 4);
  EXPECT_EQ(a.step(0), 0);
  EXPECT_EQ(a.step(1), 1);
  EXPECT_EQ(a.step(3), 0);
}

TEST(Address, RejectsMalformedText) {
  for (const char* text : {"", "X:01", "L", "L:012", "l:0", "L:0 ", ":01"}) {
    try {
      Address::parse(text);
      FAIL() << "accepted '" << text << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ParseError);
    }
  }
}

TEST(Address, IndexOrderMatchesEnumeration) {
  const auto names = oracle::vertices(6);
  ASSERT_EQ(names.size(), ball_size(6));
  for (std::size_t i = 0; i < names.size(); ++i) {
    EXPECT_EQ(Address::parse(names[i]).index(), i);
    EXPECT_EQ(Address::from_index(i).str(), names[i]);
  }
  const auto ball = edge_ball(6);
  for (std::size_t i = 0; i < ball.size(); ++i) EXPECT_EQ(ball[i].str(), names[i]);
}

TEST(Address, SphereAndBallSizes) {
  EXPECT_EQ(sphere_size(0), 2U);
  EXPECT_EQ(sphere_size(3), 16U);
  EXPECT_EQ(ball_size(0), 2U);
  EXPECT_EQ(ball_size(2), 14U);
  for (int n = 0; n <= 8; ++n) {
    EXPECT_EQ(sphere(n).size(), sphere_size(n));
    EXPECT_EQ(edge_ball(n).size(), ball_size(n));
    EXPECT_EQ(sphere(n).front().index(), sphere_offset(n));
  }
}

TEST(Address, ParentChildAndNeighbours) {
  const Address a = Address::parse("R:01");
  EXPECT_EQ(a.parent().str(), "R:0");
  EXPECT_EQ(a.child(0).str(), "R:010");
  EXPECT_EQ(a.child(1).str(), "R:011");
  EXPECT_FALSE(Address::parse("L:").has_parent());
  const auto nb = Address::parse("L:").neighbors();
  ASSERT_EQ(nb.size(), 3U);
  for (const auto& v : oracle::vertices(5)) {
    const auto lib = Address::parse(v).neighbors();
    auto ref = oracle::neighbors(v, 6);
    std::vector<std::string> got;
    for (const auto& x : lib) got.push_back(x.str());
    std::sort(got.begin(), got.end());
    std::sort(ref.begin(), ref.end());
    EXPECT_EQ(got, ref) << v;
  }
}

TEST(Address, OdometerLabels) {
  EXPECT_EQ(Address::parse("L:").label(), 0U);
  EXPECT_EQ(Address::parse("R:").label(), 1U);
  for (int n = 1; n <= 6; ++n) {
    std::vector<bool> seen(sphere_size(n), false);
    for (const auto& v : sphere(n)) {
      const auto l = v.label();
      ASSERT_LT(l, sphere_size(n));
      EXPECT_FALSE(seen[l]);
      seen[l] = true;
      const auto parent_label = v.parent().label();
      EXPECT_EQ(l, v.step(n - 1) == 0 ? parent_label : parent_label + (1U << n));
      EXPECT_EQ(Address::from_label(n, l), v);
    }
  }
}

TEST(Metric, DistanceMatchesBreadthFirstSearch) {
  const int depth = 5;
  for (const auto& v : oracle::vertices(depth)) {
    const auto dist = oracle::bfs(v, depth);
    for (const auto& [w, d] : dist) {
      EXPECT_EQ(distance(Address::parse(v), Address::parse(w)), d) << v << " " << w;
    }
  }
}

TEST(Metric, VertexBallMatchesBreadthFirstSearch) {
  for (int k = 0; k <= 3; ++k) {
    for (const auto& v : oracle::vertices(3)) {
      const Address u = Address::parse(v);
      const int depth = 7;
      const auto dist = oracle::bfs(v, depth);
      std::vector<std::string> ref;
      for (const auto& [w, d] : dist) {
        if (d <= k) ref.push_back(w);
      }
      std::sort(ref.begin(), ref.end(), [](const std::string& a, const std::string& b) {
        return Address::parse(a).index() < Address::parse(b).index();
      });
      std::vector<std::string> got;
      for (const auto& x : ball_of_vertex(u, k, depth)) got.push_back(x.str());
      EXPECT_EQ(got, ref) << v << " k=" << k;
    }
  }
}

TEST(Metric, BallAroundLeftChildHasTenVertices) {
  const auto ball = ball_of_vertex(Address::parse("L:0"), 2, 3);
  EXPECT_EQ(ball.size(), 10U);
  EXPECT_EQ(distance(Address::parse("L:0"), Address::parse("R:0")), 3);
}

TEST(Metric, BallOutsideTruncationThrows) {
  EXPECT_EQ(enclosing_level(Address::parse("L:01"), 2), 4);
  try {
    ball_of_vertex(Address::parse("L:01"), 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TruncationExceeded);
  }
  EXPECT_NO_THROW(ball_of_vertex(Address::parse("L:01"), 2, 4));
}
