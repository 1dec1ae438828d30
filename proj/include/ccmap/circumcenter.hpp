#pragma once

// The circumcenter of a finite set K: the unique point of aff(K) that is
// equidistant from every point of K, or nothing when no such point exists.

#include <ccmap/geometry.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ccmap {

// A finite set of points of R^n. Points closer than dup_tol times the
// largest norm in the family collapse onto the first one seen.
class PointSet {
 public:
  PointSet(std::vector<Vector> points, const Tolerances& tol = {}) {
    if (points.empty()) throw std::invalid_argument("PointSet: empty");
    detail::require_same_dim(points, "PointSet");
    if (points.front().size() == 0)
      throw dimension_error("PointSet: zero-dimensional points");
    for (const auto& p : points)
      if (!p.allFinite()) throw std::invalid_argument("PointSet: non-finite");

    const double merge = tol.dup_tol * detail::max_norm(points);
    for (auto& p : points) {
      bool dup = false;
      for (const auto& q : pts_)
        if ((p - q).norm() <= merge) {
          dup = true;
          break;
        }
      if (!dup) pts_.push_back(std::move(p));
    }
  }

  std::size_t size() const { return pts_.size(); }
  Eigen::Index dim() const { return pts_.front().size(); }
  const Vector& operator[](std::size_t i) const { return pts_[i]; }
  const std::vector<Vector>& points() const { return pts_; }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

 private:
  std::vector<Vector> pts_;
};

struct CircumcenterOutcome {
  bool exists = false;
  Vector center;
  double radius = 0.0;
  std::vector<std::size_t> basis_indices;

  explicit operator bool() const { return exists; }

  static CircumcenterOutcome none() { return {}; }
};

namespace detail {

// |‖c - x‖ - r| ≤ eq_tol·r for every point. Relative to r so that the
// verdict is invariant under scaling of K.
inline bool equidistant(const PointSet& k, const Vector& c, double r,
                        const Tolerances& tol) {
  for (const auto& x : k)
    if (std::abs((c - x).norm() - r) > tol.eq_tol * r) return false;
  return true;
}

inline CircumcenterOutcome trivial_outcome(const PointSet& k) {
  CircumcenterOutcome out;
  out.exists = true;
  if (k.size() == 1) {
    out.center = k[0];
    out.radius = 0.0;
    out.basis_indices = {0};
  } else {
    out.center = 0.5 * (k[0] + k[1]);
    out.radius = 0.5 * (k[0] - k[1]).norm();
    out.basis_indices = {0, 1};
  }
  return out;
}

}  // namespace detail

inline AffineHull affine_hull_basis(const PointSet& k,
                                    const Tolerances& tol = {}) {
  return affine_hull_basis(k.points(), tol);
}

// Gram-matrix formula on a pivoted affinely independent subfamily
// {x1, x_i1, ..., x_it}, followed by an equidistance check over all of K.
inline CircumcenterOutcome circumcenter(const PointSet& k,
                                        const Tolerances& tol = {}) {
  if (k.size() <= 2) return detail::trivial_outcome(k);

  const Vector& x1 = k[0];
  std::vector<Vector> diffs;
  diffs.reserve(k.size() - 1);
  for (std::size_t i = 1; i < k.size(); ++i) diffs.push_back(k[i] - x1);

  const auto ob = orthonormal_basis(diffs, tol);
  std::vector<Vector> sub;
  sub.reserve(ob.pivots.size());
  for (auto p : ob.pivots) sub.push_back(diffs[p]);

  // The Gram system G·λ = ½·diag(G) is solved through the factor G = RᵀR
  // that the orthogonalization already provides: c - x1 = Q·R⁻ᵀ·(½·diag G).
  // Forming G would square the conditioning of thin simplices.
  const auto t = static_cast<Eigen::Index>(sub.size());
  Matrix r = Matrix::Zero(t, t);
  Vector rhs(t);
  for (Eigen::Index j = 0; j < t; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) r(i, j) = ob.basis[i].dot(sub[j]);
    rhs(j) = 0.5 * sub[j].squaredNorm();
  }
  const Vector z = r.triangularView<Eigen::Upper>().transpose().solve(rhs);

  Vector c = x1;
  for (Eigen::Index i = 0; i < t; ++i) c += z(i) * ob.basis[i];

  CircumcenterOutcome out;
  out.basis_indices.push_back(0);
  double rsum = (c - x1).norm();
  for (auto p : ob.pivots) {
    out.basis_indices.push_back(p + 1);
    rsum += (c - k[p + 1]).norm();
  }
  out.radius = rsum / static_cast<double>(out.basis_indices.size());
  if (!c.allFinite() || !detail::equidistant(k, c, out.radius, tol))
    return CircumcenterOutcome::none();
  out.exists = true;
  out.center = std::move(c);
  return out;
}

inline CircumcenterOutcome circumcenter(std::vector<Vector> points,
                                        const Tolerances& tol = {}) {
  return circumcenter(PointSet(std::move(points), tol), tol);
}

// Closed form for three pairwise distinct points, weighting each vertex by
// the squared opposite side times the inner product of its two edges.
inline CircumcenterOutcome circumcenter_three(const Vector& x1, const Vector& x2,
                                              const Vector& x3,
                                              const Tolerances& tol = {}) {
  PointSet k({x1, x2, x3}, tol);
  if (k.size() < 3) return circumcenter(k, tol);
  if (rank({x2 - x1, x3 - x1}, tol) < 2) return CircumcenterOutcome::none();

  const Vector u = x2 - x1, v = x3 - x1;
  const double b = v.squaredNorm();
  const double c = u.squaredNorm();
  // 2(|u|^2 |v|^2 - <u,v>^2) by the Lagrange identity, free of cancellation
  double denom = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    for (Eigen::Index j = i + 1; j < u.size(); ++j)
      denom += std::pow(u(i) * v(j) - u(j) * v(i), 2);
  denom *= 2.0;
  // barycentric weights sum to denom, so the sum is taken relative to x1
  Vector center = x1 + (b * (x2 - x3).dot(u) * u + c * v.dot(x3 - x2) * v) / denom;

  CircumcenterOutcome out;
  out.exists = true;
  out.radius =
      ((center - x1).norm() + (center - x2).norm() + (center - x3).norm()) / 3.0;
  out.center = std::move(center);
  out.basis_indices = {0, 1, 2};
  return out;
}

// Independent cross-check. The hull is parametrized through an SVD basis of
// the differences and every equidistance equation 2<q, x_j - x1> = |x_j - x1|^2
// is solved jointly in the least-squares sense. No pivot selection, no Gram
// matrix: a different route to the same object.
inline CircumcenterOutcome circumcenter_oracle(const PointSet& k,
                                               const Tolerances& tol = {}) {
  if (k.size() == 1) return detail::trivial_outcome(k);

  const Eigen::Index n = k.dim();
  const auto m = static_cast<Eigen::Index>(k.size() - 1);
  Matrix d(n, m);
  for (Eigen::Index j = 0; j < m; ++j)
    d.col(j) = k[static_cast<std::size_t>(j + 1)] - k[0];

  Eigen::JacobiSVD<Matrix> svd(d, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol.rank_tol * s(0)) ++r;
  const Matrix basis = svd.matrixU().leftCols(r);

  const Matrix a = 2.0 * d.transpose() * basis;
  const Vector rhs = d.colwise().squaredNorm().transpose();
  const Vector mu = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  const double worst = (a * mu - rhs).cwiseAbs().maxCoeff();
  if (!(worst <= tol.eq_tol * rhs.maxCoeff())) return CircumcenterOutcome::none();

  CircumcenterOutcome out;
  out.exists = true;
  out.center = k[0] + basis * mu;
  double rsum = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    rsum += (out.center - k[i]).norm();
    out.basis_indices.push_back(i);
  }
  out.radius = rsum / static_cast<double>(k.size());
  return out;
}

}  // namespace ccmap
