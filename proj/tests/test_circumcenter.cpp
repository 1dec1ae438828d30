#include <ccmap/circumcenter.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"

using namespace ccmap;

namespace {

Vector v(std::initializer_list<double> c) { return make_vector(c); }

Vector counterexample_point(double k) { return v({2 - 1 / k, 1 / (4 * k)}); }

std::vector<Vector> random_points(std::mt19937_64& rng, int n, int count, double scale = 1) {
  std::normal_distribution<double> g;
  std::vector<Vector> out;
  for (int j = 0; j < count; ++j) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = scale * g(rng);
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(PointSet, Deduplicates) {
  const PointSet k({v({1, 0}), v({1, 1e-14}), v({0, 1})});
  EXPECT_EQ(k.size(), 2u);
}

TEST(PointSet, Errors) {
  EXPECT_THROW(PointSet({}), std::invalid_argument);
  EXPECT_THROW(PointSet({v({1}), v({1, 2})}), dimension_error);
  EXPECT_THROW(PointSet({v({std::nan(""), 0})}), std::invalid_argument);
}

TEST(Circumcenter, ContinuityCounterexampleAtOne) {
  const auto out = circumcenter({v({-2, 0}), v({2, 0}), counterexample_point(1)});
  ASSERT_TRUE(out.exists);
  EXPECT_TRUE(out.center.isApprox(v({0, -5.875}), 1e-13));
  EXPECT_NEAR(out.radius, std::hypot(2.0, 5.875), 1e-12);
}

// (1.5, 0.125) is the k = 2 member of the family.
TEST(Circumcenter, ContinuityCounterexampleAtTwo) {
  const auto out = circumcenter({v({-2, 0}), v({2, 0}), v({1.5, 0.125})});
  ASSERT_TRUE(out.exists);
  EXPECT_TRUE(out.center.isApprox(v({0, -6.9375}), 1e-13));
}

TEST(Circumcenter, ContinuityFamilyLimitIsNotMidpoint) {
  for (double k : {1.0, 2.0, 5.0, 10.0, 100.0, 1e4}) {
    const auto out = circumcenter({v({-2, 0}), v({2, 0}), counterexample_point(k)});
    ASSERT_TRUE(out.exists) << k;
    const Vector want = v({0, -8 + 2 / k + 1 / (8 * k)});
    EXPECT_LE((out.center - want).norm(), 1e-9 * want.norm()) << k;
  }
  // the limit set {(-2,0),(2,0)} has center (0,0)
  EXPECT_TRUE(circumcenter({v({-2, 0}), v({2, 0}), v({2, 0})}).center.isZero());
}

TEST(Circumcenter, PairIsMidpoint) {
  const auto out = circumcenter({v({1, 2, 3}), v({3, 2, 1})});
  ASSERT_TRUE(out.exists);
  EXPECT_TRUE(out.center.isApprox(v({2, 2, 2})));
  EXPECT_NEAR(out.radius, std::sqrt(2.0), 1e-15);
}

TEST(Circumcenter, SingletonIsItself) {
  const auto out = circumcenter({v({4, 5})});
  ASSERT_TRUE(out.exists);
  EXPECT_TRUE(out.center.isApprox(v({4, 5})));
  EXPECT_EQ(out.radius, 0.0);
}

TEST(Circumcenter, ThreeDistinctRealsDoNotExist) {
  EXPECT_FALSE(circumcenter({v({0}), v({1}), v({2})}).exists);
  EXPECT_FALSE(circumcenter_oracle(PointSet({v({0}), v({1}), v({2})})).exists);
}

// x = (4,2), U1 = span(1,0), U2 = span(1,1): {x, P1 x, P2 x, P2 P1 x}
TEST(Circumcenter, ProjectorNoncolinearExample) {
  const auto out = circumcenter({v({4, 2}), v({4, 0}), v({3, 3}), v({2, 2})});
  EXPECT_FALSE(out.exists);
}

TEST(Circumcenter, CospherePointsBeyondSimplex) {
  // five points on a circle in R^2 still have a circumcenter
  std::vector<Vector> pts;
  for (int i = 0; i < 5; ++i) {
    const double t = 0.7 + 1.3 * i;
    pts.push_back(v({1 + 2 * std::cos(t), -3 + 2 * std::sin(t)}));
  }
  const auto out = circumcenter(pts);
  ASSERT_TRUE(out.exists);
  EXPECT_TRUE(out.center.isApprox(v({1, -3}), 1e-12));
  EXPECT_NEAR(out.radius, 2.0, 1e-12);
}

TEST(Circumcenter, ScalingAndTranslationEquivariance) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const auto pts = random_points(rng, n, 1 + trial % (n + 1));
    const auto base = circumcenter(pts);
    ASSERT_TRUE(base.exists);
    const Vector z = random_points(rng, n, 1, 5.0)[0];
    for (double lambda : {-3.0, 0.25, 7.0}) {
      std::vector<Vector> moved;
      for (const auto& p : pts) moved.push_back(lambda * p + z);
      const auto out = circumcenter(moved);
      ASSERT_TRUE(out.exists);
      const Vector want = lambda * base.center + z;
      EXPECT_LE((out.center - want).norm(), 1e-10 * (1 + want.norm()));
      EXPECT_NEAR(out.radius, std::abs(lambda) * base.radius, 1e-10 * (1 + out.radius));
    }
  }
}

// Adding a point of the circumsphere that lies in the hull does not change
// the center, and the circumcenter of the pivoted subfamily is the same.
TEST(Circumcenter, BasisReduction) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto pts = random_points(rng, 3, 3);
    const auto out = circumcenter(pts);
    ASSERT_TRUE(out.exists);
    std::vector<Vector> sub;
    for (auto i : out.basis_indices) sub.push_back(PointSet(pts)[i]);
    EXPECT_TRUE(circumcenter(sub).center.isApprox(out.center, 1e-10));
    // reflect x1 across the center within the hull: still equidistant
    pts.push_back(2 * out.center - pts[0]);
    const auto more = circumcenter(pts);
    ASSERT_TRUE(more.exists);
    EXPECT_LE((more.center - out.center).norm(), 1e-9 * (1 + out.center.norm()));
  }
}

TEST(Circumcenter, AgreesWithLongDoubleOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    const int k = 1 + trial % (n + 1);
    const auto pts = random_points(rng, n, k, 2.0);
    const auto out = circumcenter(pts);
    const auto want = oracle::circumcenter(pts);
    ASSERT_EQ(out.exists, want.has_value());
    if (want) {
      EXPECT_LE((out.center - *want).norm(), 1e-9 * (1 + want->norm()));
    }
  }
}

TEST(CircumcenterThree, RightTriangle) {
  const auto out = circumcenter_three(v({0, 0}), v({2, 0}), v({0, 2}));
  ASSERT_TRUE(out.exists);
  EXPECT_TRUE(out.center.isApprox(v({1, 1})));
}

TEST(CircumcenterThree, CollinearIsNone) {
  EXPECT_FALSE(circumcenter_three(v({0, 0}), v({1, 0}), v({2, 0})).exists);
}

TEST(CircumcenterThree, ContinuityCounterexample) {
  auto out = circumcenter_three(v({-2, 0}), v({2, 0}), counterexample_point(1));
  ASSERT_TRUE(out.exists);
  EXPECT_TRUE(out.center.isApprox(v({0, -5.875}), 1e-13));
  out = circumcenter_three(v({-2, 0}), v({2, 0}), v({1.5, 0.125}));
  EXPECT_TRUE(out.center.isApprox(v({0, -6.9375}), 1e-13));
}

TEST(CircumcenterThree, RepeatedPointFallsBackToMidpoint) {
  const auto out = circumcenter_three(v({0, 0}), v({2, 0}), v({2, 0}));
  ASSERT_TRUE(out.exists);
  EXPECT_TRUE(out.center.isApprox(v({1, 0})));
}

TEST(CircumcenterThree, MatchesOracleInR3) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_points(rng, 3, 3);
    const auto a = circumcenter_three(p[0], p[1], p[2]);
    const auto b = circumcenter_oracle(PointSet(p));
    ASSERT_TRUE(a.exists && b.exists);
    EXPECT_LE((a.center - b.center).norm(), 1e-9 * (1 + b.center.norm()));
  }
}

TEST(CircumcenterOracle, Singleton) {
  const auto out = circumcenter_oracle(PointSet({v({1, -1})}));
  ASSERT_TRUE(out.exists);
  EXPECT_TRUE(out.center.isApprox(v({1, -1})));
}
