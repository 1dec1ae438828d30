#include <ccmap/geometry.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace ccmap;

namespace {

Vector v(std::initializer_list<double> c) { return make_vector(c); }

}  // namespace

TEST(Gram, OrthonormalPairGivesIdentity) {
  EXPECT_TRUE(gram({v({1, 0}), v({0, 1})}).isApprox(Matrix::Identity(2, 2)));
}

TEST(Gram, ContinuityExampleEntries) {
  const double x = 3.0;
  const Matrix g = gram({v({-4, 0}), v({x - 2, -(x - 2) / 4})});
  Matrix want(2, 2);
  want << 16, -4, -4, 17.0 / 16.0;
  EXPECT_TRUE(g.isApprox(want, 1e-15));
}

TEST(Gram, SingleVector) {
  const Matrix g = gram({v({3, 4})});
  ASSERT_EQ(g.rows(), 1);
  EXPECT_DOUBLE_EQ(g(0, 0), 25.0);
}

TEST(Gram, Errors) {
  EXPECT_THROW(gram({v({1, 0}), v({1, 0, 0})}), dimension_error);
  EXPECT_THROW(gram({}), std::invalid_argument);
}

TEST(OrthonormalBasis, CollinearKeepsFirst) {
  const auto ob = orthonormal_basis({v({2, 0}), v({4, 0})});
  ASSERT_EQ(ob.basis.size(), 1u);
  EXPECT_TRUE(ob.basis[0].isApprox(v({1, 0})));
  EXPECT_EQ(ob.pivots, std::vector<std::size_t>{0});
}

TEST(OrthonormalBasis, ZeroVectorRejected) {
  const auto ob = orthonormal_basis({v({1, 0, 0}), v({1, 1, 0}), v({0, 0, 0})});
  EXPECT_EQ(ob.basis.size(), 2u);
  for (auto p : ob.pivots) EXPECT_NE(p, 2u);
}

TEST(OrthonormalBasis, NearParallelIsRankOne) {
  EXPECT_EQ(rank({v({1, 1}), v({1, 1 + 1e-15})}), 1u);
}

TEST(OrthonormalBasis, EmptyInput) {
  EXPECT_TRUE(orthonormal_basis({}).basis.empty());
  EXPECT_EQ(rank({}), 0u);
}

TEST(OrthonormalBasis, OutputIsOrthonormal) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> vs;
    for (int j = 0; j < 4; ++j) {
      Vector x(5);
      for (int i = 0; i < 5; ++i) x(i) = g(rng);
      vs.push_back(x);
    }
    vs.push_back(vs[0] + 2 * vs[1]);
    const auto ob = orthonormal_basis(vs);
    ASSERT_EQ(ob.basis.size(), 4u);
    const Matrix q = as_columns(ob.basis, 5);
    EXPECT_LT((q.transpose() * q - Matrix::Identity(4, 4)).norm(), 1e-13);
  }
}

TEST(Rank, AffinelyIndependentTriple) {
  EXPECT_EQ(rank({v({1, 0}), v({0, 1})}), 2u);
}

// With U the x-axis, R_U x - x = (0, -2y) and R_{U⊥} x - x = (-2x, 0).
TEST(Rank, ReflectionDifferencesOnLine) {
  auto diffs = [](double x, double y) {
    return std::vector<Vector>{v({0, -2 * y}), v({-2 * x, 0})};
  };
  EXPECT_EQ(rank(diffs(3, 0)), 1u);
  EXPECT_EQ(rank(diffs(0, -2)), 1u);
  EXPECT_EQ(rank(diffs(1, 2)), 2u);
}

TEST(SolveSym, Identity) {
  const Vector b = v({1, -2, 3});
  EXPECT_TRUE(solve_sym(Matrix::Identity(3, 3), b).isApprox(b));
}

TEST(SolveSym, HandCheck) {
  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  EXPECT_TRUE(solve_sym(a, v({3, 3})).isApprox(v({1, 1}), 1e-14));
}

// Gram system at x1 = (2,0), x2 = (-2,0), x3 = (3, -1/4): the center is
// x1 + l1 (x2 - x1) + l2 (x3 - x1).
TEST(SolveSym, ContinuityGramSystem) {
  Matrix a(2, 2);
  a << 16, -4, -4, 17.0 / 16.0;
  const Vector l = solve_sym(a, 0.5 * a.diagonal());
  EXPECT_LE((a * l - 0.5 * a.diagonal()).norm(), 1e-8 * (1 + a.diagonal().norm()));
  const Vector c = v({2, 0}) + l(0) * v({-4, 0}) + l(1) * v({1, -0.25});
  EXPECT_NEAR((c - v({2, 0})).norm(), (c - v({-2, 0})).norm(), 1e-12);
  EXPECT_NEAR((c - v({2, 0})).norm(), (c - v({3, -0.25})).norm(), 1e-12);
}

TEST(SolveSym, Singular) {
  Matrix a(2, 2);
  a << 1, 1, 1, 1;
  EXPECT_THROW(solve_sym(a, v({1, 1})), singular_matrix_error);
  EXPECT_THROW(solve_sym(Matrix::Identity(2, 2), v({1, 1, 1})), dimension_error);
}

TEST(AffineHull, Singleton) {
  const auto h = affine_hull_basis(std::vector<Vector>{v({1, 2})});
  EXPECT_TRUE(h.anchor.isApprox(v({1, 2})));
  EXPECT_TRUE(h.basis.empty());
}

TEST(AffineHull, CollinearTriple) {
  const auto h = affine_hull_basis(std::vector<Vector>{v({0, 0}), v({2, 0}), v({1, 0})});
  EXPECT_TRUE(h.anchor.isZero());
  ASSERT_EQ(h.basis.size(), 1u);
  EXPECT_TRUE(h.basis[0].isApprox(v({1, 0})));
}

TEST(AffineHull, ContinuityTripleIsPlanar) {
  const auto h = affine_hull_basis(std::vector<Vector>{v({-2, 0}), v({2, 0}), v({1.5, 0.125})});
  EXPECT_EQ(h.basis.size(), 2u);
}

TEST(Tolerances, Validate) {
  EXPECT_NO_THROW(Tolerances{}.validate());
  EXPECT_THROW((Tolerances{0.0, 1e-9, 1e-12}.validate()), std::invalid_argument);
  EXPECT_THROW((Tolerances{1e-10, 1.0, 1e-12}.validate()), std::invalid_argument);
}
