#pragma once

// Test-side reference computations. They share no code path with the
// library: long double arithmetic, full-pivot LU on the barycentric system,
// and a kernel computed by LU rather than Gram-Schmidt or SVD.

#include <Eigen/Dense>

#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

inline LVec widen(const Vec& v) { return v.cast<long double>(); }

// Drop points within rel * (largest norm) of an earlier point.
inline std::vector<Vec> dedupe(const std::vector<Vec>& pts, double rel = 1e-12) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, p.norm());
  std::vector<Vec> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out) dup = dup || (p - q).norm() <= rel * m;
    if (!dup) out.push_back(p);
  }
  return out;
}

// Orthonormal basis of span(vs), from a full-pivot LU on the Gram matrix in
// long double (rank threshold relative to the largest entry), then a
// Householder QR on the selected columns.
inline LMat span_basis(const std::vector<Vec>& vs, long double rel = 1e-10L) {
  if (vs.empty()) return LMat(0, 0);
  const auto n = vs.front().size();
  LMat d(n, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) d.col(j) = widen(vs[j]);
  Eigen::ColPivHouseholderQR<LMat> qr(d);
  long double largest = 0;
  for (Eigen::Index j = 0; j < d.cols(); ++j) largest = std::max(largest, d.col(j).norm());
  qr.setThreshold(rel);
  Eigen::Index r = 0;
  const auto diag = qr.matrixR().diagonal();
  while (r < std::min(d.rows(), d.cols()) && std::abs(diag(r)) > rel * largest) ++r;
  LMat q = qr.householderQ() * LMat::Identity(n, n);
  return q.leftCols(r);
}

// Circumcenter via the barycentric system on an independent subfamily:
// c = x1 + sum_j l_j (x_j - x1) with G l = diag(G) / 2, in long double,
// then equidistance against every point at `eq` relative.
inline std::optional<Vec> circumcenter(const std::vector<Vec>& raw, double eq = 1e-9) {
  const auto pts = dedupe(raw);
  if (pts.size() == 1) return pts[0];
  const LVec x1 = widen(pts[0]);
  std::vector<LVec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    diffs.push_back(widen(pts[i]) - x1);
  }
  // greedy independent selection against the span built so far
  std::vector<LVec> chosen;
  long double largest = 0;
  for (const auto& d : diffs) largest = std::max(largest, d.norm());
  for (const auto& d : diffs) {
    LMat m(d.size(), static_cast<Eigen::Index>(chosen.size() + 1));
    for (std::size_t j = 0; j < chosen.size(); ++j) m.col(j) = chosen[j];
    m.col(m.cols() - 1) = d;
    Eigen::JacobiSVD<LMat> svd(m);
    if (svd.singularValues()(m.cols() - 1) > 1e-10L * largest) chosen.push_back(d);
    if (static_cast<Eigen::Index>(chosen.size()) == d.size()) break;
  }
  const auto t = static_cast<Eigen::Index>(chosen.size());
  LMat g(t, t);
  LVec rhs(t);
  for (Eigen::Index i = 0; i < t; ++i) {
    for (Eigen::Index j = 0; j < t; ++j) g(i, j) = chosen[i].dot(chosen[j]);
    rhs(i) = g(i, i) / 2;
  }
  const LVec l = g.fullPivLu().solve(rhs);
  LVec c = x1;
  for (Eigen::Index i = 0; i < t; ++i) c += l(i) * chosen[i];
  const long double r = (c - x1).norm();
  for (const auto& p : pts)
    if (std::abs((c - widen(p)).norm() - r) > eq * r) return std::nullopt;
  return c.cast<double>();
}

// Orthogonal projection of y onto aff(points).
inline Vec project_onto_hull(const std::vector<Vec>& raw, const Vec& y) {
  const auto pts = dedupe(raw);
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  const LVec a = widen(pts[0]);
  if (diffs.empty()) return pts[0];
  const LMat q = span_basis(diffs);
  const LVec p = a + q * (q.transpose() * (widen(y) - a));
  return p.cast<double>();
}

// Kernel of M by full-pivot LU, as columns.
inline Eigen::MatrixXd kernel(const Eigen::MatrixXd& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  if (lu.rank() == m.cols()) return Eigen::MatrixXd(m.cols(), 0);
  return lu.kernel();
}

}  // namespace oracle
