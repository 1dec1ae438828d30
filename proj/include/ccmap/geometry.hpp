#pragma once

// Small dense linear algebra used by every other header: Gram matrices,
// rank-revealing orthogonalization, symmetric solves and affine hulls.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmap {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct singular_matrix_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All thresholds are relative to the scale of the data they are applied to.
struct Tolerances {
  double rank_tol = 1e-10;
  double eq_tol = 1e-9;
  double dup_tol = 1e-12;

  void validate() const {
    auto ok = [](double t) { return t > 0.0 && t < 1.0; };
    if (!ok(rank_tol) || !ok(eq_tol) || !ok(dup_tol))
      throw std::invalid_argument("tolerances must lie in (0, 1)");
  }
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline Vector make_vector(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v(i++) = c;
  return v;
}

namespace detail {

inline void require_same_dim(const std::vector<Vector>& vs, const char* who) {
  if (vs.empty()) return;
  const auto n = vs.front().size();
  for (const auto& v : vs)
    if (v.size() != n)
      throw dimension_error(std::string(who) + ": dimension mismatch");
}

inline double max_norm(const std::vector<Vector>& vs) {
  double m = 0.0;
  for (const auto& v : vs) m = std::max(m, v.norm());
  return m;
}

}  // namespace detail

inline Matrix gram(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("gram: empty family");
  detail::require_same_dim(vectors, "gram");
  const auto k = static_cast<Eigen::Index>(vectors.size());
  Matrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j)
      g(i, j) = g(j, i) = vectors[i].dot(vectors[j]);
  return g;
}

struct OrthonormalBasis {
  std::vector<Vector> basis;
  std::vector<std::size_t> pivots;  // input indices, in selection order
};

// Column-pivoted modified Gram-Schmidt with one reorthogonalization pass.
// The pivot is the candidate with the largest residual relative to its own
// norm (lowest index on ties); a candidate whose residual drops to
// rank_tol * (largest input norm) or below is treated as dependent.
inline OrthonormalBasis orthonormal_basis(const std::vector<Vector>& vectors,
                                          const Tolerances& tol = {}) {
  OrthonormalBasis out;
  if (vectors.empty()) return out;
  detail::require_same_dim(vectors, "orthonormal_basis");

  const double threshold = tol.rank_tol * detail::max_norm(vectors);
  std::vector<Vector> resid(vectors);
  std::vector<double> norms(vectors.size());
  std::vector<bool> live(vectors.size(), true);
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    norms[j] = vectors[j].norm();
    if (norms[j] <= threshold) live[j] = false;
  }

  const std::size_t max_rank =
      std::min<std::size_t>(vectors.size(), vectors.front().size());
  while (out.basis.size() < max_rank) {
    std::size_t best = vectors.size();
    double best_ratio = 0.0;
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      if (!live[j]) continue;
      const double rn = resid[j].norm();
      if (rn <= threshold) {
        live[j] = false;
        continue;
      }
      const double ratio = rn / norms[j];
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = j;
      }
    }
    if (best == vectors.size()) break;

    Vector q = resid[best];
    for (const auto& b : out.basis) q -= b.dot(q) * b;
    live[best] = false;
    const double qn = q.norm();
    if (qn <= threshold) continue;
    q /= qn;

    for (std::size_t j = 0; j < vectors.size(); ++j)
      if (live[j]) resid[j] -= q.dot(resid[j]) * q;
    out.basis.push_back(std::move(q));
    out.pivots.push_back(best);
  }
  return out;
}

inline std::size_t rank(const std::vector<Vector>& vectors,
                        const Tolerances& tol = {}) {
  return orthonormal_basis(vectors, tol).basis.size();
}

// LDL^T with symmetric pivoting. A pivot at or below rank_tol times the
// largest diagonal magnitude is reported as singular.
inline Vector solve_sym(const Matrix& a, const Vector& b,
                        const Tolerances& tol = {}) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw dimension_error("solve_sym: shape mismatch");
  if (a.rows() == 0) return Vector(0);

  Eigen::LDLT<Matrix> ldlt(a);
  const Vector d = ldlt.vectorD();
  const double scale = a.diagonal().cwiseAbs().maxCoeff();
  if (ldlt.info() != Eigen::Success || !(scale > 0.0) ||
      d.cwiseAbs().minCoeff() <= tol.rank_tol * scale)
    throw singular_matrix_error("solve_sym: matrix is numerically singular");

  Vector x = ldlt.solve(b);
  // one step of iterative refinement keeps the residual contract tight
  x += ldlt.solve(b - a * x);
  if ((a * x - b).norm() > 1e-8 * (1.0 + b.norm()))
    throw singular_matrix_error("solve_sym: residual above contract");
  return x;
}

struct AffineHull {
  Vector anchor;
  std::vector<Vector> basis;
};

inline AffineHull affine_hull_basis(const std::vector<Vector>& points,
                                    const Tolerances& tol = {}) {
  if (points.empty())
    throw std::invalid_argument("affine_hull_basis: empty point set");
  detail::require_same_dim(points, "affine_hull_basis");
  std::vector<Vector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.push_back(points[i] - points[0]);
  return {points[0], orthonormal_basis(diffs, tol).basis};
}

// Stack a list of vectors as the columns of a matrix.
inline Matrix as_columns(const std::vector<Vector>& vs, Eigen::Index rows) {
  Matrix m(rows, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j)
    m.col(static_cast<Eigen::Index>(j)) = vs[j];
  return m;
}

}  // namespace ccmap
