#pragma once

// Best-approximation solvers on two sets: Douglas-Rachford with its shadow
// sequence, alternating projections, and circumcentered iterations.

#include <ccmap/circummap.hpp>

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ccmap {

enum class StopReason { Converged, MaxIter, LeftDomain };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Converged: return "converged";
    case StopReason::MaxIter: return "max-iter";
    case StopReason::LeftDomain: return "left-domain";
  }
  return "?";
}

struct StopRule {
  double epsilon = 1e-10;
  std::size_t max_iter = 10000;
  std::optional<Vector> target;

  void validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("StopRule: epsilon must be > 0");
    if (max_iter < 1) throw std::invalid_argument("StopRule: max_iter must be >= 1");
  }
};

struct BestPair {
  Vector u;  // point of the first set
  Vector v;  // point of the second set
};

// iterates[k] is x_k. residuals[k] is the distance of the measured point
// (shadow[k] when present, else iterates[k]) to the target; with no target
// it is the step length |x_{k+1} - x_k|, i.e. the fixed-point residual of x_k.
struct IterationTrace {
  std::vector<Vector> iterates;
  std::vector<Vector> shadow;
  std::vector<double> residuals;
  std::vector<BestPair> pairs;
  std::string method;
  StopReason stop_reason = StopReason::MaxIter;

  const Vector& measured(std::size_t k) const {
    return shadow.empty() ? iterates[k] : shadow[k];
  }
  std::size_t iterations() const { return iterates.empty() ? 0 : iterates.size() - 1; }
};

namespace detail {

// Runs x_{k+1} = step(x_k) until the rule fires. `measure` maps an iterate to
// the point whose distance to the target is tracked; step returns nothing
// when the iteration leaves its domain.
template <class Step, class Measure>
IterationTrace iterate(std::string method, const Vector& x0, const StopRule& rule,
                       Step step, Measure measure, bool record_shadow) {
  rule.validate();
  IterationTrace tr;
  tr.method = std::move(method);
  Vector x = x0;
  tr.iterates.push_back(x);
  if (record_shadow) tr.shadow.push_back(measure(x));

  for (std::size_t k = 0;; ++k) {
    if (rule.target) {
      const double r = (measure(x) - *rule.target).norm();
      tr.residuals.push_back(r);
      if (r <= rule.epsilon) {
        tr.stop_reason = StopReason::Converged;
        return tr;
      }
      if (k == rule.max_iter) return tr;
    }
    std::optional<Vector> next = step(x);
    if (!next) {
      if (!rule.target) tr.residuals.push_back(std::numeric_limits<double>::quiet_NaN());
      tr.stop_reason = StopReason::LeftDomain;
      return tr;
    }
    if (!rule.target) {
      const double r = (measure(*next) - measure(x)).norm();
      tr.residuals.push_back(r);
      if (r <= rule.epsilon) {
        tr.stop_reason = StopReason::Converged;
        return tr;
      }
      if (k == rule.max_iter) return tr;
    }
    x = std::move(*next);
    tr.iterates.push_back(x);
    if (record_shadow) tr.shadow.push_back(measure(x));
  }
}

}  // namespace detail

// x_{k+1} = (x_k + R_{U2} R_{U1} x_k) / 2, measured on the shadow P_{U1} x_k.
inline IterationTrace drm_solve(const AffineSubspace& u1, const AffineSubspace& u2,
                                const Vector& x0, const StopRule& rule) {
  return detail::iterate(
      "DRM", x0, rule,
      [&](const Vector& x) -> std::optional<Vector> {
        return Vector(0.5 * (x + u2.reflect(u1.reflect(x))));
      },
      [&](const Vector& x) { return u1.project(x); }, true);
}

// x_{k+1} = P_{U2} P_{U1} x_k
inline IterationTrace map_solve(const AffineSubspace& u1, const AffineSubspace& u2,
                                const Vector& x0, const StopRule& rule) {
  return detail::iterate(
      "MAP", x0, rule,
      [&](const Vector& x) -> std::optional<Vector> {
        return u2.project(u1.project(x));
      },
      [](const Vector& x) { return x; }, false);
}

// x_{k+1} = CC_S x_k; LeftDomain when CC_S x_k does not exist.
inline IterationTrace crm_solve(const OperatorSet& s, const Vector& x0,
                                const StopRule& rule, const Tolerances& tol = {}) {
  return detail::iterate(
      "CRM", x0, rule,
      [&](const Vector& x) -> std::optional<Vector> {
        auto cc = cc_map(s, x, tol);
        if (!cc) return std::nullopt;
        return std::move(cc.center);
      },
      [](const Vector& x) { return x; }, false);
}

struct empty_intersection_error : std::domain_error {
  using std::domain_error::domain_error;
};

inline Vector best_approximation(const std::vector<AffineSubspace>& subspaces,
                                 const Vector& x0, const Tolerances& tol = {}) {
  const auto meet = intersect_affine(subspaces, tol);
  if (!meet) throw empty_intersection_error("best_approximation: empty intersection");
  return meet->project(x0);
}

// Smallest k with |measured_k - target| <= epsilon, over the recorded prefix.
inline std::optional<std::size_t> iterations_to_tolerance(const IterationTrace& tr,
                                                         const Vector& target,
                                                         double epsilon) {
  for (std::size_t k = 0; k < tr.iterates.size(); ++k)
    if ((tr.measured(k) - target).norm() <= epsilon) return k;
  return std::nullopt;
}

using ConvexSet = std::variant<AffineSubspace, Ball>;

namespace detail {

inline Vector project_onto(const ConvexSet& c, const Vector& x) {
  return std::visit(
      [&](const auto& s) -> Vector {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Ball>)
          return project_ball(s, x);
        else
          return s.project(x);
      },
      c);
}

}  // namespace detail

// Douglas-Rachford T = (R_V R_U + Id)/2 for a possibly inconsistent pair.
// Records (P_U x_n, P_V R_U x_n); the residual is the change of that pair
// (or the distance of its U-point to the target when one is given).
inline IterationTrace drm_pair_solve(const AffineSubspace& u, const ConvexSet& v,
                                     const Vector& x0, const StopRule& rule) {
  rule.validate();
  auto pair_at = [&](const Vector& x) {
    return BestPair{u.project(x), detail::project_onto(v, u.reflect(x))};
  };
  IterationTrace tr;
  tr.method = "DRM-pair";
  Vector x = x0;
  tr.iterates.push_back(x);
  tr.pairs.push_back(pair_at(x));

  for (std::size_t k = 0;; ++k) {
    if (rule.target) {
      const double r = (tr.pairs.back().u - *rule.target).norm();
      tr.residuals.push_back(r);
      if (r <= rule.epsilon) {
        tr.stop_reason = StopReason::Converged;
        return tr;
      }
      if (k == rule.max_iter) return tr;
    }
    const Vector ru = u.reflect(x);
    const Vector rv = 2.0 * detail::project_onto(v, ru) - ru;
    Vector next = 0.5 * (rv + x);
    const BestPair p = pair_at(next);
    if (!rule.target) {
      const double r = std::max((p.u - tr.pairs.back().u).norm(),
                                (p.v - tr.pairs.back().v).norm());
      tr.residuals.push_back(r);
      if (r <= rule.epsilon) {
        tr.stop_reason = StopReason::Converged;
        return tr;
      }
      if (k == rule.max_iter) return tr;
    }
    x = std::move(next);
    tr.iterates.push_back(x);
    tr.pairs.push_back(p);
  }
}

}  // namespace ccmap
