#pragma once

// Circumcenter mappings CC_S x = CCO({T_1 x, ..., T_m x}) for a finite
// operator set S, with domain diagnostics and fixed-point tooling.

#include <ccmap/circumcenter.hpp>
#include <ccmap/operators.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccmap {

class OperatorSet {
 public:
  OperatorSet(std::vector<Operator> ops, std::string name = "S")
      : ops_(std::move(ops)), name_(std::move(name)) {
    if (ops_.empty()) throw std::invalid_argument("OperatorSet: empty");
  }

  std::size_t size() const { return ops_.size(); }
  const Operator& operator[](std::size_t i) const { return ops_[i]; }
  const std::vector<Operator>& ops() const { return ops_; }
  const std::string& name() const { return name_; }
  auto begin() const { return ops_.begin(); }
  auto end() const { return ops_.end(); }

  std::string describe() const {
    std::string s = "{";
    for (std::size_t i = 0; i < ops_.size(); ++i)
      s += (i ? ", " : "") + ops_[i].label();
    return s + "}";
  }

 private:
  std::vector<Operator> ops_;
  std::string name_;
};

// Raw images T_i x in order, before deduplication.
inline std::vector<Vector> images(const OperatorSet& s, const Vector& x) {
  std::vector<Vector> out;
  out.reserve(s.size());
  for (const auto& t : s) out.push_back(apply(t, x));
  return out;
}

inline PointSet evaluate_set(const OperatorSet& s, const Vector& x,
                             const Tolerances& tol = {}) {
  return PointSet(images(s, x), tol);
}

inline CircumcenterOutcome cc_map(const OperatorSet& s, const Vector& x,
                                  const Tolerances& tol = {}) {
  return circumcenter(evaluate_set(s, x, tol), tol);
}

struct DomainDiagnosis {
  bool in_domain = false;
  std::size_t card = 0;
  bool affinely_independent = false;
  // nonzero (alpha, beta) with alpha (x2 - x1) + beta (x3 - x1) = 0,
  // reported when card = 3 and the three images are affinely dependent
  std::optional<std::pair<double, double>> witness;
};

inline DomainDiagnosis in_domain(const OperatorSet& s, const Vector& x,
                                 const Tolerances& tol = {}) {
  const PointSet k = evaluate_set(s, x, tol);
  DomainDiagnosis d;
  d.card = k.size();
  d.in_domain = circumcenter(k, tol).exists;

  std::vector<Vector> diffs;
  for (std::size_t i = 1; i < k.size(); ++i) diffs.push_back(k[i] - k[0]);
  d.affinely_independent = rank(diffs, tol) == diffs.size();

  if (d.card == 3 && !d.affinely_independent) {
    Matrix m(k.dim(), 2);
    m.col(0) = diffs[0];
    m.col(1) = diffs[1];
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    Vector w = svd.matrixV().col(1);
    w /= w.cwiseAbs().maxCoeff();
    d.witness = std::make_pair(w(0), w(1));
  }
  return d;
}

// Deterministic Gaussian points; sample i depends only on (seed, i).
struct GaussianCloud {
  Eigen::Index dim;
  std::uint64_t seed = 0;
  double scale = 1.0;
  Vector center;

  Vector operator()(std::size_t i) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i),
                      static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> g;
    Vector v(dim);
    for (Eigen::Index j = 0; j < dim; ++j) v(j) = scale * g(rng);
    if (center.size() == dim) v += center;
    return v;
  }
};

// A fixed list of probe points, cycled.
struct ProbeList {
  std::vector<Vector> points;
  Vector operator()(std::size_t i) const { return points[i % points.size()]; }
};

struct PropernessReport {
  std::size_t checked = 0;
  std::vector<Vector> counterexamples;
  // samples where the card = 3 affine-independence criterion and the
  // computed existence disagree (should always be empty)
  std::vector<Vector> criterion_disagreements;

  bool proper() const { return counterexamples.empty(); }
};

template <class Sampler>
PropernessReport check_properness_sampled(const OperatorSet& s, Sampler&& sampler,
                                          std::size_t count,
                                          const Tolerances& tol = {}) {
  if (count == 0) throw std::invalid_argument("check_properness_sampled: count = 0");
  PropernessReport rep;
  for (std::size_t i = 0; i < count; ++i) {
    const Vector x = sampler(i);
    const auto d = in_domain(s, x, tol);
    ++rep.checked;
    if (!d.in_domain) rep.counterexamples.push_back(x);
    if (s.size() == 3 && d.card == 3 && d.in_domain != d.affinely_independent)
      rep.criterion_disagreements.push_back(x);
  }
  return rep;
}

inline std::optional<double> fixed_point_residual(const OperatorSet& s,
                                                  const Vector& x,
                                                  const Tolerances& tol = {}) {
  const auto cc = cc_map(s, x, tol);
  if (!cc) return std::nullopt;
  return (x - cc.center).norm();
}

struct DemiclosednessReport {
  std::vector<double> residuals;
  bool residuals_vanish = false;
  Vector limit;
  std::optional<double> limit_residual;
  bool limit_is_fixed = false;
  bool left_domain = false;
};

// Residuals are said to vanish when the last is at most 5% of the first and
// the final quarter of the sequence is nonincreasing. The limit candidate
// defaults to the last element of the sequence.
inline DemiclosednessReport demiclosedness_probe(const OperatorSet& s,
                                                 const std::vector<Vector>& sequence,
                                                 const Tolerances& tol = {},
                                                 std::optional<Vector> limit = {}) {
  if (sequence.empty()) throw std::invalid_argument("demiclosedness_probe: empty");
  DemiclosednessReport rep;
  for (const auto& x : sequence) {
    const auto r = fixed_point_residual(s, x, tol);
    if (!r) {
      rep.left_domain = true;
      return rep;
    }
    rep.residuals.push_back(*r);
  }

  const auto& res = rep.residuals;
  const std::size_t n = res.size();
  bool tail_down = true;
  for (std::size_t i = std::max<std::size_t>(1, n - n / 4); i < n; ++i)
    if (res[i] > res[i - 1] * (1.0 + 1e-12)) tail_down = false;
  rep.residuals_vanish =
      res.back() <= 1e-12 * (1.0 + sequence.back().norm()) ||
      (n > 1 && res.back() <= 0.05 * res.front() && tail_down);

  rep.limit = limit ? *limit : sequence.back();
  rep.limit_residual = fixed_point_residual(s, rep.limit, tol);
  rep.limit_is_fixed =
      rep.limit_residual &&
      *rep.limit_residual <= 100.0 * tol.eq_tol * (1.0 + rep.limit.norm());
  return rep;
}

// {Id, (1 - alpha) Id + alpha T_2, ..., (1 - alpha) Id + alpha T_m}
inline OperatorSet relaxed_set(const OperatorSet& base, double alpha) {
  std::vector<Operator> ops{base[0]};
  for (std::size_t i = 1; i < base.size(); ++i) ops.push_back(relaxed(base[i], alpha));
  return OperatorSet(std::move(ops), base.name() + "~");
}

// (cc of the relaxed set at x, alpha * CC_base x + (1 - alpha) x)
inline std::pair<Vector, Vector> affine_comb_identity_check(const OperatorSet& base,
                                                            double alpha,
                                                            const Vector& x,
                                                            const Tolerances& tol = {}) {
  const auto lhs = cc_map(relaxed_set(base, alpha), x, tol);
  const auto cc = cc_map(base, x, tol);
  if (!lhs || !cc)
    throw std::domain_error("affine_comb_identity_check: x outside the domain");
  return {lhs.center, alpha * cc.center + (1.0 - alpha) * x};
}

}  // namespace ccmap
