#include <ccmap/circummap.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"

using namespace ccmap;

namespace {

Vector v(std::initializer_list<double> c) { return make_vector(c); }

AffineSubspace x_axis() { return AffineSubspace::span({v({1, 0})}); }
AffineSubspace y_axis() { return AffineSubspace::span({v({0, 1})}); }

Vector gauss(std::mt19937_64& rng, int n, double s = 1) {
  std::normal_distribution<double> g;
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = s * g(rng);
  return x;
}

std::vector<AffineSubspace> through(std::mt19937_64& rng, const Vector& p, int m) {
  const int n = static_cast<int>(p.size());
  std::vector<AffineSubspace> us;
  for (int i = 0; i < m; ++i) {
    std::vector<Vector> dirs;
    for (int j = 0; j < (i + 1) % n; ++j) dirs.push_back(gauss(rng, n));
    us.emplace_back(p, dirs);
  }
  return us;
}

OperatorSet reflectors_of(const std::vector<AffineSubspace>& us) {
  std::vector<Operator> ops{identity()};
  for (const auto& u : us) ops.push_back(reflector(u));
  return OperatorSet(ops);
}

// {Id, R_U, R_U⊥}, {Id, P_U, P_U⊥, 0} with U a line through 0 in R^2
OperatorSet reflector_pair(const AffineSubspace& u) {
  return OperatorSet({identity(), reflector(u), reflector(u.orthogonal_complement())});
}
OperatorSet projector_quad(const AffineSubspace& u) {
  return OperatorSet({identity(), projector(u), projector(u.orthogonal_complement()),
                      constant(Vector::Zero(2))});
}

}  // namespace

TEST(EvaluateSet, Cardinalities) {
  const auto u = AffineSubspace::span({v({1, 2})});
  EXPECT_EQ(evaluate_set(reflector_pair(u), v({2, 4})).size(), 2u);
  EXPECT_EQ(evaluate_set(OperatorSet({identity()}), v({2, 4})).size(), 1u);
  EXPECT_EQ(evaluate_set(projector_quad(u), v({3, -1})).size(), 4u);
}

TEST(CcMap, ReflectorsOfLineAndComplementVanish) {
  std::mt19937_64 rng(31);
  const auto u = AffineSubspace::span({v({1, 2})});
  for (int i = 0; i < 100; ++i) {
    const Vector x = gauss(rng, 2, 4);
    const auto cc = cc_map(reflector_pair(u), x);
    ASSERT_TRUE(cc.exists);
    EXPECT_LE(cc.center.norm(), 1e-12 * (1 + x.norm()));
  }
}

TEST(CcMap, ProjectorsGiveHalf) {
  std::mt19937_64 rng(32);
  const auto u = AffineSubspace::span({v({1, 2})});
  for (int i = 0; i < 100; ++i) {
    const Vector x = gauss(rng, 2, 4);
    const auto cc = cc_map(projector_quad(u), x);
    ASSERT_TRUE(cc.exists);
    EXPECT_LE((cc.center - 0.5 * x).norm(), 1e-12 * (1 + x.norm()));
  }
}

// x0 lies on U1, so S(x0) = {x0, R_U2 x0} and the center is P_U2 x0.
TEST(CcMap, LinePlaneStartOnLine) {
  const auto u1 = AffineSubspace::span({v({1, 0, 0})});
  const auto u2 = AffineSubspace::hyperplane(v({1, 1, 1}), 0);
  const OperatorSet s({identity(), reflector(u1), reflector(u2)});
  const Vector x0 = v({0.5, 0, 0});
  const auto cc = cc_map(s, x0);
  ASSERT_TRUE(cc.exists);
  EXPECT_EQ(evaluate_set(s, x0).size(), 2u);
  EXPECT_TRUE(cc.center.isApprox(v({1.0 / 3, -1.0 / 6, -1.0 / 6}), 1e-14));
}

TEST(CcMap, InconsistentPointLineOffDomain) {
  const OperatorSet s({identity(), reflector(AffineSubspace::point(v({2, 0}))), reflector(y_axis())});
  EXPECT_FALSE(cc_map(s, v({3, 0})).exists);
  EXPECT_TRUE(cc_map(s, v({2, 0})).exists);
  EXPECT_TRUE(cc_map(s, v({3, 1})).exists);
}

TEST(InDomain, ScaledAxes) {
  auto s = [](double alpha) {
    return OperatorSet({scaled_identity(alpha), reflector(x_axis()), reflector(y_axis())});
  };
  const auto d = in_domain(s(2), v({1, 0}));
  EXPECT_FALSE(d.in_domain);
  EXPECT_EQ(d.card, 3u);
  EXPECT_FALSE(d.affinely_independent);
  ASSERT_TRUE(d.witness);
  EXPECT_TRUE(in_domain(s(2), v({0, 0})).in_domain);
  EXPECT_TRUE(in_domain(s(2), v({1, 1})).in_domain);

  std::mt19937_64 rng(33);
  std::vector<Vector> pts{v({1, 0}), v({0, -3}), v({0, 0})};
  for (int i = 0; i < 200; ++i) pts.push_back(gauss(rng, 2, 3));
  const auto rep = check_properness_sampled(s(1), ProbeList{pts}, pts.size());
  EXPECT_TRUE(rep.proper());
  EXPECT_TRUE(rep.criterion_disagreements.empty());
}

TEST(InDomain, CardAtMostTwoIsInDomain) {
  const OperatorSet s({identity(), constant(v({1, 1}))});
  EXPECT_TRUE(in_domain(s, v({5, -5})).in_domain);
}

TEST(Properness, RandomReflectorConfigurations) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const auto us = through(rng, gauss(rng, n, 2), 2 + trial % 3);
    const auto rep =
        check_properness_sampled(reflectors_of(us), GaussianCloud{n, 5u + trial, 3.0, {}}, 50);
    EXPECT_TRUE(rep.proper()) << trial;
    EXPECT_TRUE(rep.criterion_disagreements.empty());
  }
}

TEST(Properness, NoncolinearProjectorsImproper) {
  const std::vector<AffineSubspace> us{x_axis(), AffineSubspace::span({v({1, 1})})};
  const OperatorSet s({identity(), projector_word(us, {1}), projector_word(us, {2}),
                       projector_word(us, {1, 2})});
  std::vector<Vector> grid;
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) grid.push_back(v({i - 4.0, j - 4.0}));
  const auto rep = check_properness_sampled(s, ProbeList{grid}, grid.size());
  EXPECT_FALSE(rep.proper());
  bool found = false;
  for (const auto& x : rep.counterexamples) found = found || x.isApprox(v({4, 2}));
  EXPECT_TRUE(found);
}

TEST(Properness, IdentityOnly) {
  EXPECT_TRUE(
      check_properness_sampled(OperatorSet({identity()}), GaussianCloud{3, 1, 1.0, {}}, 20).proper());
  EXPECT_THROW(check_properness_sampled(OperatorSet({identity()}), GaussianCloud{3}, 0),
               std::invalid_argument);
}

TEST(FixedPointResidual, Examples) {
  std::mt19937_64 rng(35);
  const Vector p = gauss(rng, 3);
  const auto us = through(rng, p, 3);
  EXPECT_LE(*fixed_point_residual(reflectors_of(us), p), 1e-10);

  const auto u = AffineSubspace::line(v({0, 1}), v({2, 1}));
  const OperatorSet pair({identity(), reflector(u)});
  for (int i = 0; i < 20; ++i) {
    const Vector x = gauss(rng, 2, 3);
    EXPECT_NEAR(*fixed_point_residual(pair, x), (x - u.project(x)).norm(), 1e-12 * (1 + x.norm()));
  }
}

namespace {

// {(-2,0), (2,0), P_L} with L : v = -u/4 + 1/2
OperatorSet demi_set() {
  return OperatorSet({constant(v({-2, 0})), constant(v({2, 0})),
                      projector(AffineSubspace::hyperplane(v({0.25, 1}), 0.5))});
}

}  // namespace

TEST(Demiclosedness, CounterexampleSequence) {
  const auto s = demi_set();
  EXPECT_NEAR(*fixed_point_residual(s, v({0, -8})), 8.0, 1e-12);
  std::vector<Vector> xs;
  for (int k = 1; k <= 100; ++k) xs.push_back(v({1.0 / k, -1.0 / (4.0 * k) - 8}));
  const auto rep = demiclosedness_probe(s, xs, {}, v({0, -8}));
  EXPECT_FALSE(rep.left_domain);
  EXPECT_TRUE(rep.residuals_vanish);
  EXPECT_FALSE(rep.limit_is_fixed);
  ASSERT_TRUE(rep.limit_residual);
  EXPECT_NEAR(*rep.limit_residual, 8.0, 1e-6);
  for (std::size_t i = 0; i < xs.size(); i += 9) {
    const auto c = oracle::circumcenter(images(s, xs[i]));
    ASSERT_TRUE(c.has_value());
    EXPECT_NEAR(rep.residuals[i], (xs[i] - *c).norm(), 1e-10);
  }
}

TEST(Demiclosedness, ConstantSequenceAtFixedPoint) {
  std::mt19937_64 rng(36);
  const Vector p = gauss(rng, 3);
  const auto s = reflectors_of(through(rng, p, 2));
  const auto rep = demiclosedness_probe(s, std::vector<Vector>(10, p));
  for (double r : rep.residuals) EXPECT_LE(r, 1e-12);
  EXPECT_TRUE(rep.residuals_vanish);
  EXPECT_TRUE(rep.limit_is_fixed);
}

TEST(Demiclosedness, ProperSetLimitIsFixed) {
  const auto u1 = x_axis();
  const auto u2 = AffineSubspace::span({v({1, 3})});
  const auto s = reflectors_of({u1, u2});
  std::vector<Vector> xs;
  for (int k = 1; k <= 60; ++k) xs.push_back(v({1.0 / k, 2.0 / (k * k)}));
  const auto rep = demiclosedness_probe(s, xs, {}, Vector::Zero(2));
  EXPECT_TRUE(rep.residuals_vanish);
  EXPECT_TRUE(rep.limit_is_fixed);
}

TEST(Demiclosedness, EmptySequence) {
  EXPECT_THROW(demiclosedness_probe(demi_set(), {}), std::invalid_argument);
}

TEST(AffineCombination, RelaxedIdentities) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 4;
    const auto s = reflectors_of(through(rng, gauss(rng, n, 2), 2 + trial % 3));
    const Vector x = gauss(rng, n, 3);
    for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      const auto [lhs, rhs] = affine_comb_identity_check(s, a, x);
      EXPECT_LE((lhs - rhs).norm(), 1e-9 * (1 + x.norm())) << a;
      if (a == 0.0) {
        EXPECT_TRUE(lhs.isApprox(x));
      }
      if (a == 1.0) {
        EXPECT_TRUE(lhs.isApprox(cc_map(s, x).center, 1e-12));
      }
    }
  }
}

// {Id, P_U1, ..., P_Um} is {Id, R_U1, ..., R_Um} relaxed with alpha = 1/2.
TEST(AffineCombination, ProjectorsAreHalfRelaxedReflectors) {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 4;
    const auto us = through(rng, gauss(rng, n, 2), 3);
    std::vector<Operator> ps{identity()};
    for (const auto& u : us) ps.push_back(projector(u));
    const Vector x = gauss(rng, n, 3);
    const Vector want = 0.5 * cc_map(reflectors_of(us), x).center + 0.5 * x;
    const auto got = cc_map(OperatorSet(ps), x);
    ASSERT_TRUE(got.exists);
    EXPECT_LE((got.center - want).norm(), 1e-9 * (1 + x.norm()));
  }
}

TEST(CcMap, TwoOperatorsGiveMidpoint) {
  std::mt19937_64 rng(39);
  const auto u1 = x_axis();
  const auto u2 = AffineSubspace::line(v({1, 0}), v({1, 1}));
  const Operator t = reflector(u2) * reflector(u1);
  for (int i = 0; i < 50; ++i) {
    const Vector x = gauss(rng, 2, 3);
    const Vector want = 0.5 * (x + t(x));
    EXPECT_LE((cc_map(OperatorSet({identity(), t}), x).center - want).norm(),
              1e-13 * (1 + x.norm()));
  }
}

TEST(CcMap, AgreesWithOracleOnWords) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 4;
    const auto us = through(rng, gauss(rng, n, 2), 3);
    const OperatorSet s({identity(), reflector_word(us, {1}), reflector_word(us, {1, 2}),
                         reflector_word(us, {3, 1, 2})});
    const Vector x = gauss(rng, n, 3);
    const auto got = cc_map(s, x);
    const auto want = oracle::circumcenter(images(s, x));
    ASSERT_TRUE(got.exists);
    ASSERT_TRUE(want.has_value());
    EXPECT_LE((got.center - *want).norm(), 1e-8 * (1 + x.norm()));
  }
}

TEST(OperatorSet, DescribeAndErrors) {
  const OperatorSet s({identity(), reflector(x_axis(), "U1")}, "S1");
  EXPECT_EQ(s.describe(), "{Id, R_U1}");
  EXPECT_EQ(s.name(), "S1");
  EXPECT_THROW(OperatorSet({}), std::invalid_argument);
}
